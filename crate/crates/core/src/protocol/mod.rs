//! Exhaustive simulation of the entanglement-assisted protocols.
//!
//! Each run attaches the maximally entangled resource `(1/√N) Σ_k |k⟩_a|k⟩_b`
//! to every basis input `|i⟩_A|p⟩_B`, pushes all of them through the circuit
//! together, and projects the ancillas onto every outcome pair. What remains
//! for outcome pair `(x, y)` is the Kraus operator of that branch. Nothing is
//! sampled.
//!
//! Group circuit (also used for the double form): controlled-`U(f)` from `a`
//! onto `A`, `F` on `a`, measure `a → h`; `Z(h)` on `b`, `M` on `bB`, measure
//! `b → g`; `U(g)†` on `A`.
//!
//! Controlled circuit: `Σ_j P_j ⊗ X^j` from `A` onto `a`, measure `a → l`;
//! `X^l` on `b`, controlled-`V_j` from `b` onto `B`, `F` on `b`, measure
//! `b → m`; `Z_m = Σ_j ω^{−jm} P_j` on `A`.

mod registers;

use alloc::format;
use alloc::vec::Vec;

use registers::Batch;

use crate::algebra::{phase_aligned_distance, unitarity_residual, ComplexMatrix, StateVector};
use crate::groups::root_of_unity;
use crate::reps::ProjectiveRep;
use crate::unitaries::{ControlledUnitary, DoubleUnitary, GroupFormUnitary};
use crate::{tol, Error, Result, C64};

const REG_A: usize = 0;
const REG_B: usize = 1;
const REG_ANC_A: usize = 2;
/// Index of `b` once `a` has been measured and removed.
const REG_ANC_B: usize = 2;

/// `F_{mj} = e^{2πimj/N}/√N`.
pub fn build_f(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Validation("Fourier matrix needs N >= 1".into()));
    }
    let s = 1.0 / libm::sqrt(n as f64);
    Ok(ComplexMatrix::from_fn(n, n, |m, j| root_of_unity((m * j) as i64, n as u64) * s))
}

fn check_unbiased(f: &ComplexMatrix) -> Result<()> {
    if !f.is_square() {
        return Err(Error::Shape("F must be square".into()));
    }
    let target = 1.0 / libm::sqrt(f.rows() as f64);
    let worst = f.as_slice().iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max);
    if worst > tol::UNITARY {
        return Err(Error::Validation(format!("F is not unbiased: entry magnitudes deviate by {worst:.3e}")));
    }
    let u = unitarity_residual(f)?;
    if u > tol::UNITARY {
        return Err(Error::Validation(format!("F is not unitary (residual {u:.3e})")));
    }
    Ok(())
}

/// `Z(h)|f⟩ = c ⟨h|F|f⟩⁻¹ |f⟩` with `c = N^{−1/2}`.
pub fn build_zh(f: &ComplexMatrix, h: usize) -> Result<ComplexMatrix> {
    check_unbiased(f)?;
    if h >= f.rows() {
        return Err(Error::Shape(format!("outcome {h} out of range for N = {}", f.rows())));
    }
    let c = 1.0 / libm::sqrt(f.rows() as f64);
    let diag: Vec<C64> = f.row(h).iter().map(|&x| C64::new(c, 0.0) / x).collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Controlled,
    Group,
    Double,
}

impl core::fmt::Display for Variant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Variant::Controlled => "controlled",
            Variant::Group => "group",
            Variant::Double => "double",
        })
    }
}

#[derive(Clone, Debug)]
enum Circuit {
    Group { rep: ProjectiveRep, m: ComplexMatrix },
    Controlled { projectors: Vec<ComplexMatrix>, unitaries: Vec<ComplexMatrix> },
}

/// Everything needed to run one protocol: the gates, the unbiased matrix
/// `F`, and the unitary the protocol is meant to implement.
#[derive(Clone, Debug)]
pub struct ProtocolSpec {
    variant: Variant,
    circuit: Circuit,
    f: ComplexMatrix,
    target: ComplexMatrix,
    d_a: usize,
    d_b: usize,
}

impl ProtocolSpec {
    /// Group circuit with `M = Σ_f R(f) ⊗ W(f)`.
    pub fn group(gfu: &GroupFormUnitary) -> Result<Self> {
        let n = gfu.group_order();
        Ok(Self {
            variant: Variant::Group,
            circuit: Circuit::Group { rep: gfu.rep().clone(), m: gfu.m_operator() },
            f: build_f(n)?,
            target: gfu.assembled().clone(),
            d_a: gfu.d_a(),
            d_b: gfu.d_b(),
        })
    }

    /// Group circuit with `M` realized as `CtrlV† · (C ⊗ I) · CtrlV`.
    pub fn double(du: &DoubleUnitary) -> Result<Self> {
        let gfu = du.group_form()?;
        let mut spec = Self::group(&gfu)?;
        spec.variant = Variant::Double;
        spec.circuit = Circuit::Group { rep: du.rep_a().clone(), m: du.factorized_m() };
        Ok(spec)
    }

    pub fn controlled(cu: &ControlledUnitary) -> Result<Self> {
        Ok(Self {
            variant: Variant::Controlled,
            circuit: Circuit::Controlled { projectors: cu.projectors().to_vec(), unitaries: cu.unitaries().to_vec() },
            f: build_f(cu.len())?,
            target: cu.assembled(),
            d_a: cu.d_a(),
            d_b: cu.d_b(),
        })
    }

    /// Replaces the default discrete Fourier matrix by another unbiased unitary.
    pub fn with_f(mut self, f: ComplexMatrix) -> Result<Self> {
        check_unbiased(&f)?;
        if f.rows() != self.f.rows() {
            return Err(Error::Shape(format!("F is {}x{}, expected N = {}", f.rows(), f.cols(), self.f.rows())));
        }
        self.f = f;
        Ok(self)
    }

    /// Replaces `M` in a group or double circuit (for negative controls).
    pub fn with_m(mut self, m: ComplexMatrix) -> Result<Self> {
        let n = self.group_order();
        match &mut self.circuit {
            Circuit::Group { m: slot, .. } => {
                if m.rows() != n * self.d_b || m.cols() != n * self.d_b {
                    return Err(Error::Shape(format!("M must be {0}x{0}", n * self.d_b)));
                }
                *slot = m;
                Ok(self)
            }
            Circuit::Controlled { .. } => Err(Error::Precondition("the controlled circuit has no M gate".into())),
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn target(&self) -> &ComplexMatrix {
        &self.target
    }

    /// Schmidt rank `N` of the resource, the number of outcomes per measurement.
    pub fn group_order(&self) -> usize {
        self.f.rows()
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn m_operator(&self) -> Option<&ComplexMatrix> {
        match &self.circuit {
            Circuit::Group { m, .. } => Some(m),
            Circuit::Controlled { .. } => None,
        }
    }
}

/// One measurement branch.
#[derive(Clone, Debug)]
pub struct Branch {
    /// Outcome of the first measurement (`h` or `l`).
    pub outcome_a: usize,
    /// Outcome of the second measurement (`g` or `m`).
    pub outcome_b: usize,
    pub kraus: ComplexMatrix,
    /// `e^{iθ}` with `θ = arg Tr(target† K)`.
    pub phase: C64,
    /// `max |K − e^{iθ} target/N|`.
    pub residual: f64,
    /// `K|ψ⟩` for the supplied input, if any.
    pub output: Option<Vec<C64>>,
    /// `‖K|ψ⟩‖²` for the supplied input, if any.
    pub probability: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ProtocolTranscript {
    pub variant: Variant,
    pub group_order: usize,
    pub target: ComplexMatrix,
    /// Unitarity residual of the target; large values flag an invalid form.
    pub target_residual: f64,
    pub branches: Vec<Branch>,
}

impl ProtocolTranscript {
    pub fn worst_residual(&self) -> f64 {
        self.branches.iter().map(|b| b.residual).fold(0.0, f64::max)
    }

    /// `‖Σ K†K − I‖_max`.
    pub fn completeness_residual(&self) -> f64 {
        let d = self.target.rows();
        let mut acc = ComplexMatrix::zeros(d, d);
        for b in &self.branches {
            acc = &acc + &(&b.kraus.adjoint() * &b.kraus);
        }
        acc.max_abs_diff(&ComplexMatrix::identity(d))
    }

    /// Largest entry-wise difference between the Kraus operators of two
    /// transcripts, matched by outcome pair.
    pub fn kraus_distance(&self, other: &ProtocolTranscript) -> f64 {
        if self.branches.len() != other.branches.len() {
            return f64::INFINITY;
        }
        self.branches
            .iter()
            .map(|a| {
                other
                    .branches
                    .iter()
                    .find(|b| b.outcome_a == a.outcome_a && b.outcome_b == a.outcome_b)
                    .map_or(f64::INFINITY, |b| a.kraus.max_abs_diff(&b.kraus))
            })
            .fold(0.0, f64::max)
    }
}

fn record(target: &ComplexMatrix, n: usize, x: usize, y: usize, kraus: ComplexMatrix, input: Option<&StateVector>) -> Branch {
    let t = target.inner(&kraus);
    let phase = if t.norm() > 0.0 { t / t.norm() } else { C64::new(1.0, 0.0) };
    let residual = kraus.max_abs_diff(&target.scale(phase / n as f64));
    let output = input.map(|s| kraus.mul_vec(s.amplitudes()));
    let probability = output.as_ref().map(|o| o.iter().map(C64::norm_sqr).sum());
    Branch { outcome_a: x, outcome_b: y, kraus, phase, residual, output, probability }
}

fn check_input(spec: &ProtocolSpec, input: Option<&StateVector>) -> Result<()> {
    if let Some(s) = input {
        let d = spec.d_a * spec.d_b;
        if s.total_dim() != d {
            return Err(Error::Shape(format!("input has dimension {}, expected {d}", s.total_dim())));
        }
        let norm = s.norm();
        if (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::Validation(format!("input norm {norm} is not 1")));
        }
    }
    Ok(())
}

fn initial_batch(d_a: usize, d_b: usize, n: usize) -> Batch {
    let mut batch = Batch::zeros(alloc::vec![d_a, d_b, n, n], d_a * d_b);
    let amp = C64::new(1.0 / libm::sqrt(n as f64), 0.0);
    for i in 0..d_a {
        for p in 0..d_b {
            for k in 0..n {
                batch.set(&[i, p, k, k], i * d_b + p, amp);
            }
        }
    }
    batch
}

/// Runs every branch of the circuit in `spec`. With an input state, each
/// branch also carries its output vector and probability.
pub fn simulate(spec: &ProtocolSpec, input: Option<&StateVector>) -> Result<ProtocolTranscript> {
    check_input(spec, input)?;
    let n = spec.group_order();
    let (d_a, d_b) = (spec.d_a, spec.d_b);
    let mut batch = initial_batch(d_a, d_b, n);
    let mut branches = Vec::with_capacity(n * n);
    match &spec.circuit {
        Circuit::Group { rep, m } => {
            batch.apply(&[REG_ANC_A, REG_A], &ComplexMatrix::direct_sum(rep.matrices()));
            batch.apply(&[REG_ANC_A], &spec.f);
            let corrections: Vec<ComplexMatrix> = rep.matrices().iter().map(ComplexMatrix::adjoint).collect();
            for h in 0..n {
                let mut after_h = batch.project(REG_ANC_A, h);
                after_h.apply(&[REG_ANC_B], &build_zh(&spec.f, h)?);
                after_h.apply(&[REG_ANC_B, REG_B], m);
                for g in 0..n {
                    let mut out = after_h.project(REG_ANC_B, g);
                    out.apply(&[REG_A], &corrections[g]);
                    branches.push(record(&spec.target, n, h, g, out.into_matrix(), input));
                }
            }
        }
        Circuit::Controlled { projectors, unitaries } => {
            let shift = |j: usize| ComplexMatrix::from_fn(n, n, |r, c| C64::new(f64::from(u8::from(r == (c + n - j % n) % n)), 0.0));
            let ctrl_x = projectors
                .iter()
                .enumerate()
                .fold(ComplexMatrix::zeros(d_a * n, d_a * n), |acc, (j, p)| &acc + &p.kron(&shift(j)));
            batch.apply(&[REG_A, REG_ANC_A], &ctrl_x);
            let ctrl_v = ComplexMatrix::direct_sum(unitaries);
            for l in 0..n {
                let mut after_l = batch.project(REG_ANC_A, l);
                after_l.apply(&[REG_ANC_B], &shift(l));
                after_l.apply(&[REG_ANC_B, REG_B], &ctrl_v);
                after_l.apply(&[REG_ANC_B], &spec.f);
                for m in 0..n {
                    let z_m = projectors
                        .iter()
                        .enumerate()
                        .fold(ComplexMatrix::zeros(d_a, d_a), |acc, (j, p)| &acc + &p.scale(root_of_unity(-((j * m) as i64), n as u64)));
                    let mut out = after_l.project(REG_ANC_B, m);
                    out.apply(&[REG_A], &z_m);
                    branches.push(record(&spec.target, n, l, m, out.into_matrix(), input));
                }
            }
        }
    }
    Ok(ProtocolTranscript {
        variant: spec.variant,
        group_order: n,
        target: spec.target.clone(),
        target_residual: unitarity_residual(&spec.target)?,
        branches,
    })
}

pub fn simulate_group_protocol(gfu: &GroupFormUnitary, input: Option<&StateVector>) -> Result<ProtocolTranscript> {
    simulate(&ProtocolSpec::group(gfu)?, input)
}

pub fn simulate_controlled_protocol(cu: &ControlledUnitary, input: Option<&StateVector>) -> Result<ProtocolTranscript> {
    simulate(&ProtocolSpec::controlled(cu)?, input)
}

pub fn simulate_double_protocol(du: &DoubleUnitary, input: Option<&StateVector>) -> Result<ProtocolTranscript> {
    simulate(&ProtocolSpec::double(du)?, input)
}

/// Verdict on whether the ancilla record carries information about the input.
#[derive(Clone, Debug, PartialEq)]
pub struct AbsenceReport {
    pub passed: bool,
    pub branch_count: usize,
    /// Worst `‖K†K − (Tr(K†K)/d) I‖_max` over branches.
    pub isometry_residual: f64,
    /// Worst phase-aligned distance between normalized Kraus operators.
    pub proportionality_residual: f64,
    /// `‖Σ K†K − I‖_max`.
    pub completeness_residual: f64,
    /// Spread `max − min` of the input-averaged branch probabilities `Tr(K†K)/d`.
    pub probability_spread: f64,
    /// Worst distance of a branch from `e^{iθ} target/N`.
    pub worst_kraus_residual: f64,
}

/// Passes when every Kraus operator is a multiple of an isometry and all
/// branches are proportional to one another, both within `1e-9`.
pub fn information_absence_check(t: &ProtocolTranscript) -> AbsenceReport {
    let d = t.target.rows() as f64;
    let mut isometry = 0.0f64;
    let mut weights = Vec::with_capacity(t.branches.len());
    let mut normalized = Vec::new();
    for b in &t.branches {
        let gram = &b.kraus.adjoint() * &b.kraus;
        let w = gram.trace().re / d;
        isometry = isometry.max(gram.max_abs_diff(&ComplexMatrix::identity(gram.rows()).scale_real(w)));
        weights.push(w);
        if w > 0.0 {
            normalized.push(b.kraus.scale_real(1.0 / libm::sqrt(w)));
        }
    }
    let mut proportionality = 0.0f64;
    for i in 0..normalized.len() {
        for j in (i + 1)..normalized.len() {
            proportionality = proportionality.max(phase_aligned_distance(&normalized[i], &normalized[j]));
        }
    }
    let spread = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max) - weights.iter().copied().fold(f64::INFINITY, f64::min);
    AbsenceReport {
        passed: isometry < tol::KRAUS && proportionality < tol::KRAUS,
        branch_count: t.branches.len(),
        isometry_residual: isometry,
        proportionality_residual: proportionality,
        completeness_residual: t.completeness_residual(),
        probability_spread: if spread.is_finite() { spread } else { 0.0 },
        worst_kraus_residual: t.worst_residual(),
    }
}
