use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// One violated requirement found by a validator.
#[derive(Debug, Clone, PartialEq)]
pub enum Issue {
    /// `table[f][g]` lies outside `0..N`.
    Closure { f: usize, g: usize, value: usize },
    /// `(fg)h != f(gh)`.
    Associativity { f: usize, g: usize, h: usize },
    /// Element 0 does not act as the identity on `f`.
    Identity { f: usize },
    /// `f` has no two-sided inverse.
    Inverse { f: usize },
    /// `|μ(f,g)|` differs from 1.
    Modulus { f: usize, g: usize, deviation: f64 },
    /// `μ(e,f)` or `μ(f,e)` differs from 1.
    Normalization { f: usize, g: usize, deviation: f64 },
    /// `μ(h,f)μ(hf,g) != μ(h,fg)μ(f,g)`.
    Cocycle { h: usize, f: usize, g: usize, residual: f64 },
    /// A matrix that must be unitary is not.
    NotUnitary { element: usize, residual: f64 },
    /// The matrix for the identity element is not `I`.
    IdentityMatrix { residual: f64 },
    /// `U(f)U(g) != μ(f,g)U(fg)`.
    Relation { f: usize, g: usize, residual: f64 },
    /// Sizes disagree (element count, matrix dimension, table size).
    Dimension { detail: String },
    /// `Σ d_λ²` differs from the group order.
    DimensionSum { sum: usize, order: usize },
    /// Orthogonality relation between irreducible matrix entries fails.
    Orthogonality { residual: f64 },
    /// Free-form failure from a form-level check.
    Condition { name: &'static str, residual: f64 },
}

impl fmt::Display for Issue {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Closure { f, g, value } => {
                write!(out, "closure violated at ({f},{g}): product index {value}")
            }
            Issue::Associativity { f, g, h } => {
                write!(out, "associativity violated at ({f},{g},{h})")
            }
            Issue::Identity { f } => write!(out, "element 0 is not an identity for {f}"),
            Issue::Inverse { f } => write!(out, "element {f} has no inverse"),
            Issue::Modulus { f, g, deviation } => {
                write!(out, "|mu({f},{g})| deviates from 1 by {deviation:.3e}")
            }
            Issue::Normalization { f, g, deviation } => {
                write!(out, "normalization mu({f},{g}) = 1 violated by {deviation:.3e}")
            }
            Issue::Cocycle { h, f, g, residual } => {
                write!(out, "cocycle rule violated at ({h},{f},{g}), residual {residual:.3e}")
            }
            Issue::NotUnitary { element, residual } => {
                write!(out, "matrix {element} not unitary, residual {residual:.3e}")
            }
            Issue::IdentityMatrix { residual } => {
                write!(out, "identity element not represented by I, residual {residual:.3e}")
            }
            Issue::Relation { f, g, residual } => {
                write!(out, "U({f})U({g}) != mu U({f}{g}), residual {residual:.3e}")
            }
            Issue::Dimension { detail } => write!(out, "dimension mismatch: {detail}"),
            Issue::DimensionSum { sum, order } => {
                write!(out, "sum of squared irrep dimensions {sum} != group order {order}")
            }
            Issue::Orthogonality { residual } => {
                write!(out, "orthogonality relation fails, residual {residual:.3e}")
            }
            Issue::Condition { name, residual } => {
                write!(out, "{name} fails, residual {residual:.3e}")
            }
        }
    }
}

/// Outcome of a validator: every issue found plus the worst numerical residual seen.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    pub worst_residual: f64,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub(crate) fn push(&mut self, issue: Issue) {
        self.issues.push(issue);
    }

    pub(crate) fn observe(&mut self, residual: f64) {
        if residual > self.worst_residual || residual.is_nan() {
            self.worst_residual = residual;
        }
    }

    /// Appends the issues of `other`, keeping the larger worst residual.
    pub fn merge(&mut self, other: ValidationReport) {
        self.observe(other.worst_residual);
        self.issues.extend(other.issues);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(out, "valid (worst residual {:.3e})", self.worst_residual);
        }
        writeln!(out, "{} issue(s), worst residual {:.3e}", self.issues.len(), self.worst_residual)?;
        for issue in &self.issues {
            writeln!(out, "  - {issue}")?;
        }
        Ok(())
    }
}
