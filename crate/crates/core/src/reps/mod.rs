//! Projective unitary representations `U(f)U(g) = μ(f,g)U(fg)` and complete
//! sets of inequivalent irreducible ones.

mod builtin;

use alloc::format;
use alloc::vec::Vec;

pub use builtin::{
    cyclic_irreps, d4_ordinary_irreps, d4_projective_irreps, product_irreps, s3_irreps, xz_irreps,
};

use crate::algebra::{rank_with_threshold, unitarity_residual, ComplexMatrix};
use crate::groups::{validate_factor_system, FactorSystem, FiniteGroup};
use crate::validation::{Issue, ValidationReport};
use crate::{tol, Error, Result, C64};

/// One `d×d` matrix per group element, meant to satisfy `U(f)U(g) = μ(f,g)U(fg)`.
#[derive(Clone, Debug)]
pub struct ProjectiveRep {
    group: FiniteGroup,
    factors: FactorSystem,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl ProjectiveRep {
    /// Checks sizes only; use [`validate_projective_rep`] for the algebra.
    pub fn new(group: FiniteGroup, factors: FactorSystem, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let n = group.order();
        if factors.order() != n {
            return Err(Error::Shape(format!("factor system of order {} for group of order {n}", factors.order())));
        }
        if matrices.len() != n {
            return Err(Error::Shape(format!("{} matrices for a group of order {n}", matrices.len())));
        }
        let dim = matrices[0].rows();
        if let Some(f) = matrices.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape(format!("matrix {f} is not {dim}x{dim}")));
        }
        Ok(Self { group, factors, dim, matrices })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn factors(&self) -> &FactorSystem {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, f: usize) -> &ComplexMatrix {
        &self.matrices[f]
    }

    /// `Γ(f) = U(f) ⊗ V(f)`, a representation with factor system `μν`.
    pub fn tensor(&self, other: &ProjectiveRep) -> Result<ProjectiveRep> {
        if self.group != other.group {
            return Err(Error::Validation("tensor product of representations of different groups".into()));
        }
        let factors = self.factors.product(&other.factors)?;
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.kron(b)).collect();
        ProjectiveRep::new(self.group.clone(), factors, matrices)
    }

    /// Same matrices re-read against another factor system (the caller
    /// vouches that the relation holds, e.g. after rephasing).
    pub fn with_factors(&self, factors: FactorSystem) -> Result<ProjectiveRep> {
        ProjectiveRep::new(self.group.clone(), factors, self.matrices.clone())
    }

    /// `U'(f) = φ(f)U(f)` with factor system `μ'(f,g) = μ(f,g)φ(f)φ(g)/φ(fg)`.
    pub fn rephase(&self, phases: &[C64]) -> Result<ProjectiveRep> {
        let n = self.group.order();
        if phases.len() != n {
            return Err(Error::Shape(format!("{} phases for a group of order {n}", phases.len())));
        }
        let mu = (0..n * n)
            .map(|x| {
                let (f, g) = (x / n, x % n);
                self.factors.mu(f, g) * phases[f] * phases[g] / phases[self.group.mul(f, g)]
            })
            .collect();
        let matrices = self.matrices.iter().zip(phases).map(|(m, &p)| m.scale(p)).collect();
        ProjectiveRep::new(self.group.clone(), FactorSystem::from_phases(n, mu)?, matrices)
    }
}

/// Checks unitarity of each matrix, `U(e) = I`, and the multiplication rule
/// over all `N²` pairs, reporting each violation and the worst residual.
pub fn validate_projective_rep(r: &ProjectiveRep) -> ValidationReport {
    let mut report = validate_factor_system(&r.group, &r.factors);
    let n = r.group.order();
    for (f, m) in r.matrices.iter().enumerate() {
        let res = unitarity_residual(m).unwrap_or(f64::INFINITY);
        report.observe(res);
        if res > tol::UNITARY || !res.is_finite() {
            report.push(Issue::NotUnitary { element: f, residual: res });
        }
    }
    let id = r.matrices[0].max_abs_diff(&ComplexMatrix::identity(r.dim));
    report.observe(id);
    if id > tol::COCYCLE {
        report.push(Issue::IdentityMatrix { residual: id });
    }
    for f in 0..n {
        for g in 0..n {
            let lhs = &r.matrices[f] * &r.matrices[g];
            let rhs = r.matrices[r.group.mul(f, g)].scale(r.factors.mu(f, g));
            let res = lhs.max_abs_diff(&rhs);
            report.observe(res);
            if res > tol::COCYCLE || !res.is_finite() {
                report.push(Issue::Relation { f, g, residual: res });
            }
        }
    }
    report
}

/// `R(f) = Σ_g μ(g,f) |g⟩⟨gf|`, of dimension `|G|`.
pub fn regular_projective_rep(group: &FiniteGroup, fs: &FactorSystem) -> Result<ProjectiveRep> {
    let n = group.order();
    let matrices = (0..n)
        .map(|f| {
            let mut m = ComplexMatrix::zeros(n, n);
            for g in 0..n {
                m[(g, group.mul(g, f))] = fs.mu(g, f);
            }
            m
        })
        .collect();
    ProjectiveRep::new(group.clone(), fs.clone(), matrices)
}

/// Rank, at relative threshold `1e-8`, of the `|G| × d²` matrix of flattened `U(f)`.
pub fn span_dimension(r: &ProjectiveRep) -> usize {
    let d2 = r.dim * r.dim;
    let rows = ComplexMatrix::from_fn(r.matrices.len(), d2, |f, k| r.matrices[f].as_slice()[k]);
    rank_with_threshold(&rows, tol::RANK_REL)
}

/// An irreducible representation with its label `λ` (0-based position in its set).
#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: usize,
    pub rep: ProjectiveRep,
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// A complete set of inequivalent irreducible representations sharing one factor system.
#[derive(Clone, Debug)]
pub struct IrrepSet {
    group: FiniteGroup,
    factors: FactorSystem,
    irreps: Vec<Irrep>,
}

impl IrrepSet {
    /// Labels are assigned in order. Each matrix list must have one entry per element.
    pub fn new(group: FiniteGroup, factors: FactorSystem, matrices: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        let irreps = matrices
            .into_iter()
            .enumerate()
            .map(|(label, ms)| Ok(Irrep { label, rep: ProjectiveRep::new(group.clone(), factors.clone(), ms)? }))
            .collect::<Result<Vec<_>>>()?;
        if irreps.is_empty() {
            return Err(Error::Shape("an irrep set needs at least one irrep".into()));
        }
        Ok(Self { group, factors, irreps })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn factors(&self) -> &FactorSystem {
        &self.factors
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(Irrep::dim).collect()
    }

    /// `D^(λ)_jk(f)`.
    #[inline]
    pub fn entry(&self, lambda: usize, f: usize, j: usize, k: usize) -> C64 {
        self.irreps[lambda].rep.matrices[f][(j, k)]
    }

    /// Composite row labels `(λ, j, k)` with `λ` outermost, then `j`, then `k`.
    pub fn row_labels(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (l, ir) in self.irreps.iter().enumerate() {
            for j in 0..ir.dim() {
                for k in 0..ir.dim() {
                    out.push((l, j, k));
                }
            }
        }
        out
    }
}

/// Multiplicity `n_λ` of each irrep in a block-diagonal representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityPattern(pub Vec<usize>);

impl MultiplicityPattern {
    /// `Σ n_λ d_λ` for the given set.
    pub fn total_dim(&self, set: &IrrepSet) -> usize {
        self.0.iter().zip(set.irreps()).map(|(n, ir)| n * ir.dim()).sum()
    }

    pub fn present(&self) -> Vec<bool> {
        self.0.iter().map(|&n| n > 0).collect()
    }
}

/// `U(f) = ⊕_λ ⊕_{η<n_λ} D^(λ)(f)`, together with the diagonal projectors onto
/// each `(λ, η)` block in the same order.
pub fn block_diagonal_rep(set: &IrrepSet, pattern: &MultiplicityPattern) -> Result<(ProjectiveRep, Vec<ComplexMatrix>)> {
    if pattern.0.len() != set.len() {
        return Err(Error::Shape(format!("pattern has {} entries for {} irreps", pattern.0.len(), set.len())));
    }
    if pattern.0.iter().all(|&n| n == 0) {
        return Err(Error::Validation("multiplicity pattern is all zero".into()));
    }
    let dim = pattern.total_dim(set);
    let mut blocks: Vec<(usize, usize)> = Vec::new(); // (irrep, offset)
    let mut offset = 0;
    for (l, &n) in pattern.0.iter().enumerate() {
        for _ in 0..n {
            blocks.push((l, offset));
            offset += set.irreps[l].dim();
        }
    }
    let n = set.group.order();
    let matrices = (0..n)
        .map(|f| {
            let mut m = ComplexMatrix::zeros(dim, dim);
            for &(l, off) in &blocks {
                m.set_block(off, off, set.irreps[l].rep.matrix(f));
            }
            m
        })
        .collect();
    let projectors = blocks
        .iter()
        .map(|&(l, off)| {
            let d = set.irreps[l].dim();
            ComplexMatrix::from_fn(dim, dim, |i, j| {
                if i == j && i >= off && i < off + d {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        })
        .collect();
    Ok((ProjectiveRep::new(set.group.clone(), set.factors.clone(), matrices)?, projectors))
}

/// `Ď(K,f) = √(d_λ/N) D^(λ)_jk(f)` with rows `K = (λ,j,k)`; no validation.
pub(crate) fn hat_matrix_raw(set: &IrrepSet) -> ComplexMatrix {
    let n = set.group.order();
    let labels = set.row_labels();
    ComplexMatrix::from_fn(labels.len(), n, |row, f| {
        let (l, j, k) = labels[row];
        let scale = libm::sqrt(set.irreps[l].dim() as f64 / n as f64);
        set.entry(l, f, j, k) * scale
    })
}

/// Checks each irrep, the shared factor system, `Σ d_λ² = |G|` and the
/// orthogonality relations `Σ_f conj(D^λ_jk(f)) D^κ_j′k′(f) = (N/d_λ) δ_λκ δ_jj′ δ_kk′`.
pub fn validate_irrep_set(s: &IrrepSet) -> ValidationReport {
    let mut report = validate_factor_system(&s.group, &s.factors);
    for ir in &s.irreps {
        let sub = validate_projective_rep(&ir.rep);
        // the factor system was already covered above
        report.observe(sub.worst_residual);
        report.issues.extend(sub.issues.into_iter().filter(|i| {
            !matches!(i, Issue::Modulus { .. } | Issue::Normalization { .. } | Issue::Cocycle { .. })
        }));
        let mismatch = ir.rep.factors.distance(&s.factors);
        if mismatch > tol::COCYCLE {
            report.push(Issue::Dimension { detail: format!("irrep {} uses a different factor system", ir.label) });
        }
    }
    let n = s.group.order();
    let sum: usize = s.irreps.iter().map(|i| i.dim() * i.dim()).sum();
    if sum != n {
        report.push(Issue::DimensionSum { sum, order: n });
    }
    // rows of the hat matrix are orthonormal exactly when the relations hold
    let hat = hat_matrix_raw(s);
    let gram = &hat * &hat.adjoint();
    let res = gram.max_abs_diff(&ComplexMatrix::identity(gram.rows()));
    report.observe(res);
    if res > tol::COCYCLE || !res.is_finite() {
        report.push(Issue::Orthogonality { residual: res });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, d4_projective_factor_system, xz_factor_system};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn trivial_and_z_reps_are_valid() {
        let g = cyclic(2).unwrap();
        let fs = FactorSystem::trivial(2);
        let triv = ProjectiveRep::new(g.clone(), fs.clone(), alloc::vec![ComplexMatrix::identity(2); 2]).unwrap();
        assert!(validate_projective_rep(&triv).is_valid());
        let z = ComplexMatrix::diagonal(&[c(1.0), c(-1.0)]);
        let r = ProjectiveRep::new(g, fs, alloc::vec![ComplexMatrix::identity(2), z]).unwrap();
        assert!(validate_projective_rep(&r).is_valid());
    }

    #[test]
    fn xz_operators_form_a_projective_rep() {
        for n in 2..=4 {
            let set = xz_irreps(n).unwrap();
            let r = validate_projective_rep(&set.irreps()[0].rep);
            assert!(r.is_valid(), "n={n}: {r}");
        }
    }

    #[test]
    fn broken_relation_is_located() {
        let g = cyclic(2).unwrap();
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        // X·X = I but the factor system claims μ(1,1) = −1
        let fs = FactorSystem::from_phases(2, alloc::vec![c(1.0), c(1.0), c(1.0), c(-1.0)]).unwrap();
        let r = ProjectiveRep::new(g, fs, alloc::vec![ComplexMatrix::identity(2), x]).unwrap();
        let rep = validate_projective_rep(&r);
        assert!(rep.issues.iter().any(|i| matches!(i, Issue::Relation { f: 1, g: 1, .. })));
    }

    #[test]
    fn regular_rep_examples() {
        let g = cyclic(2).unwrap();
        let r = regular_projective_rep(&g, &FactorSystem::trivial(2)).unwrap();
        assert_eq!(r.matrix(1), &ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap());
        assert_eq!(r.matrix(0), &ComplexMatrix::identity(2));

        let (g, fs) = xz_factor_system(2).unwrap();
        let r = regular_projective_rep(&g, &fs).unwrap();
        let rep = validate_projective_rep(&r);
        assert!(rep.is_valid() && rep.worst_residual < 1e-15, "{rep}");
        // one unit-modulus entry per row and column
        for m in r.matrices() {
            for i in 0..4 {
                let nz = (0..4).filter(|&j| m[(i, j)].norm() > 0.0).count();
                assert_eq!(nz, 1);
                assert!((m.row(i).iter().map(|z| z.norm()).sum::<f64>() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn tensor_factor_system_is_the_product() {
        let (g, fs) = d4_projective_factor_system();
        let set = d4_projective_irreps();
        assert_eq!(set.factors(), &fs);
        let a = &set.irreps()[0].rep;
        let b = &set.irreps()[1].rep;
        let t = a.tensor(b).unwrap();
        assert!(validate_projective_rep(&t).is_valid());
        assert!(t.factors().is_trivial());
        assert_eq!(t.group(), &g);
    }

    #[test]
    fn block_diagonal_examples() {
        let set = s3_irreps();
        let (u, p) = block_diagonal_rep(&set, &MultiplicityPattern(alloc::vec![0, 1, 1])).unwrap();
        assert_eq!(u.dim(), 3);
        assert_eq!(p.len(), 2);
        assert_eq!(span_dimension(&u), 5);
        let sum = p.iter().fold(ComplexMatrix::zeros(3, 3), |acc, q| &acc + q);
        assert_eq!(sum, ComplexMatrix::identity(3));

        let (u, _) = block_diagonal_rep(&set, &MultiplicityPattern(alloc::vec![1, 1, 1])).unwrap();
        assert_eq!(u.dim(), 4);
        assert_eq!(span_dimension(&u), 6);

        let d4 = d4_projective_irreps();
        let (u, _) = block_diagonal_rep(&d4, &MultiplicityPattern(alloc::vec![1, 1])).unwrap();
        assert_eq!(u.dim(), 4);
        assert!(validate_projective_rep(&u).is_valid());
        assert_eq!(span_dimension(&u), 8);

        assert!(matches!(
            block_diagonal_rep(&set, &MultiplicityPattern(alloc::vec![0, 0, 0])),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn xz_span_is_full() {
        for n in 2..=4 {
            let set = xz_irreps(n).unwrap();
            assert_eq!(span_dimension(&set.irreps()[0].rep), n * n);
        }
    }

    #[test]
    fn built_in_sets_pass_orthogonality() {
        let z2 = IrrepSet::new(
            cyclic(2).unwrap(),
            FactorSystem::trivial(2),
            alloc::vec![
                alloc::vec![ComplexMatrix::identity(1); 2],
                alloc::vec![ComplexMatrix::identity(1), ComplexMatrix::from_real(1, 1, &[-1.0]).unwrap()],
            ],
        )
        .unwrap();
        assert!(validate_irrep_set(&z2).is_valid());

        let s3 = s3_irreps();
        assert_eq!(s3.dims(), alloc::vec![1, 1, 2]);
        assert!(validate_irrep_set(&s3).is_valid());

        let d4 = d4_projective_irreps();
        assert_eq!(d4.dims(), alloc::vec![2, 2]);
        let r = validate_irrep_set(&d4);
        assert!(r.is_valid(), "{r}");

        assert!(validate_irrep_set(&d4_ordinary_irreps()).is_valid());
        for n in 1..=5 {
            assert!(validate_irrep_set(&cyclic_irreps(n).unwrap()).is_valid());
        }
        for n in 2..=4 {
            assert!(validate_irrep_set(&xz_irreps(n).unwrap()).is_valid());
        }
        let z2z2 = product_irreps(&cyclic_irreps(2).unwrap(), &cyclic_irreps(2).unwrap()).unwrap();
        assert!(validate_irrep_set(&z2z2).is_valid());
    }

    #[test]
    fn incomplete_or_repeated_sets_fail() {
        let s3 = s3_irreps();
        let partial = IrrepSet::new(
            s3.group().clone(),
            s3.factors().clone(),
            alloc::vec![s3.irreps()[0].rep.matrices().to_vec(), s3.irreps()[2].rep.matrices().to_vec()],
        )
        .unwrap();
        let r = validate_irrep_set(&partial);
        assert!(r.issues.iter().any(|i| matches!(i, Issue::DimensionSum { sum: 5, order: 6 })));

        let doubled = IrrepSet::new(
            s3.group().clone(),
            s3.factors().clone(),
            alloc::vec![
                s3.irreps()[0].rep.matrices().to_vec(),
                s3.irreps()[0].rep.matrices().to_vec(),
                s3.irreps()[2].rep.matrices().to_vec(),
            ],
        )
        .unwrap();
        let r = validate_irrep_set(&doubled);
        assert!(r.issues.iter().any(|i| matches!(i, Issue::Orthogonality { .. })));
    }
}
