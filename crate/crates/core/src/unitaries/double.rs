use alloc::format;
use alloc::vec::Vec;

use super::group_form::{assemble_group_unitary, GroupFormUnitary};
use crate::algebra::ComplexMatrix;
use crate::fourier::WFamily;
use crate::groups::{FactorSystem, FiniteGroup};
use crate::reps::ProjectiveRep;
use crate::{tol, Error, Result, C64};

/// `U = Σ_f c(f) U(f) ⊗ V(f)` where `U` carries factor system `μ`, `V`
/// carries `ν`, and `Γ(f) = U(f) ⊗ V(f)` carries `γ = μν`.
#[derive(Clone, Debug)]
pub struct DoubleUnitary {
    c: Vec<C64>,
    rep_a: ProjectiveRep,
    rep_b: ProjectiveRep,
    gamma: FactorSystem,
}

impl DoubleUnitary {
    pub fn new(c: Vec<C64>, rep_a: ProjectiveRep, rep_b: ProjectiveRep) -> Result<Self> {
        if rep_a.group() != rep_b.group() {
            return Err(Error::Validation("the two representations belong to different groups".into()));
        }
        let gamma = rep_a.factors().product(rep_b.factors())?;
        Self::with_gamma(c, rep_a, rep_b, gamma)
    }

    /// Like [`DoubleUnitary::new`] with a caller-supplied `γ`, which must equal `μν`.
    pub fn with_gamma(c: Vec<C64>, rep_a: ProjectiveRep, rep_b: ProjectiveRep, gamma: FactorSystem) -> Result<Self> {
        let n = rep_a.group().order();
        if rep_a.group() != rep_b.group() {
            return Err(Error::Validation("the two representations belong to different groups".into()));
        }
        if c.len() != n {
            return Err(Error::Shape(format!("{} coefficients for a group of order {n}", c.len())));
        }
        let expected = rep_a.factors().product(rep_b.factors())?;
        let gap = gamma.distance(&expected);
        if gap > tol::COCYCLE {
            return Err(Error::Validation(format!("gamma differs from mu*nu by {gap:.3e}")));
        }
        Ok(Self { c, rep_a, rep_b, gamma })
    }

    /// `Σ_f c(f) U(f) ⊗ U(f)` with the same representation on both sides.
    pub fn symmetric(c: Vec<C64>, rep: ProjectiveRep) -> Result<Self> {
        Self::new(c, rep.clone(), rep)
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.c
    }

    pub fn rep_a(&self) -> &ProjectiveRep {
        &self.rep_a
    }

    pub fn rep_b(&self) -> &ProjectiveRep {
        &self.rep_b
    }

    pub fn gamma(&self) -> &FactorSystem {
        &self.gamma
    }

    pub fn group(&self) -> &FiniteGroup {
        self.rep_a.group()
    }

    /// `W(f) = c(f) V(f)`.
    pub fn w_family(&self) -> WFamily {
        WFamily::new(self.c.iter().zip(self.rep_b.matrices()).map(|(&c, v)| v.scale(c)).collect())
            .expect("V matrices share one size")
    }

    pub fn group_form(&self) -> Result<GroupFormUnitary> {
        assemble_group_unitary(&self.rep_a, &self.w_family())
    }

    /// `C_{g,f} = γ(g, g⁻¹f) c(g⁻¹f)`.
    pub fn c_operator(&self) -> ComplexMatrix {
        c_operator(self.group(), &self.gamma, &self.c)
    }

    /// Block-diagonal `Σ_f |f⟩⟨f| ⊗ V(f)` on `H_b ⊗ H_B`.
    pub fn controlled_v(&self) -> ComplexMatrix {
        ComplexMatrix::direct_sum(self.rep_b.matrices())
    }

    /// `CtrlV† · (C ⊗ I) · CtrlV`, equal to the `M` operator of [`Self::group_form`].
    pub fn factorized_m(&self) -> ComplexMatrix {
        let cv = self.controlled_v();
        let c = self.c_operator().kron(&ComplexMatrix::identity(self.rep_b.dim()));
        &(&cv.adjoint() * &c) * &cv
    }
}

pub fn c_operator(group: &FiniteGroup, gamma: &FactorSystem, c: &[C64]) -> ComplexMatrix {
    let n = group.order();
    ComplexMatrix::from_fn(n, n, |g, f| {
        let h = group.mul(group.inverse(g), f);
        gamma.mu(g, h) * c[h]
    })
}

/// The assembled unitary and the operator `C`.
pub fn assemble_double(du: &DoubleUnitary) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let d = du.rep_a.dim() * du.rep_b.dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for ((&c, u), v) in du.c.iter().zip(du.rep_a.matrices()).zip(du.rep_b.matrices()) {
        if c != C64::new(0.0, 0.0) {
            acc = &acc + &u.kron(v).scale(c);
        }
    }
    Ok((acc, du.c_operator()))
}

/// `max_g |Σ_f conj(γ(f,g)) conj(c(f)) c(fg) − δ(e,g)|`.
pub fn check_c_condition(du: &DoubleUnitary) -> f64 {
    let g = du.group();
    let n = g.order();
    (0..n)
        .map(|x| {
            let mut s = C64::new(if x == 0 { -1.0 } else { 0.0 }, 0.0);
            for f in 0..n {
                s += du.gamma.mu(f, x).conj() * du.c[f].conj() * du.c[g.mul(f, x)];
            }
            s.norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{operator_schmidt, unitarity_residual};
    use crate::fourier::{synthesize_c, RBlockFamily};
    use crate::groups::cyclic;
    use crate::reps::{block_diagonal_rep, d4_projective_irreps, s3_irreps, MultiplicityPattern};
    use crate::unitaries::{assemble_m, check_w_condition};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn s3_rep(d: usize) -> ProjectiveRep {
        let pat = if d == 3 { alloc::vec![0, 1, 1] } else { alloc::vec![1, 1, 1] };
        block_diagonal_rep(&s3_irreps(), &MultiplicityPattern(pat)).unwrap().0
    }

    #[test]
    fn delta_coefficients() {
        let rep = s3_rep(3);
        let mut cf = alloc::vec![c(0.0); 6];
        cf[0] = c(1.0);
        let du = DoubleUnitary::symmetric(cf, rep).unwrap();
        let (u, cm) = assemble_double(&du).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(9)) < 1e-15);
        assert_eq!(cm, ComplexMatrix::identity(6));
        assert_eq!(check_c_condition(&du), 0.0);
    }

    #[test]
    fn two_nonzero_on_z2_fails_by_one() {
        let g = cyclic(2).unwrap();
        let rep = ProjectiveRep::new(g, FactorSystem::trivial(2), alloc::vec![ComplexMatrix::identity(1); 2]).unwrap();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let du = DoubleUnitary::symmetric(alloc::vec![c(s), c(s)], rep).unwrap();
        assert!((check_c_condition(&du) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn table_row_one_and_three() {
        let row1: Vec<C64> = [2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0].iter().map(|&x| c(x)).collect();
        let du = DoubleUnitary::symmetric(row1, s3_rep(3)).unwrap();
        assert!(check_c_condition(&du) < 1e-12);
        let r3 = 1.0 / 3f64.sqrt();
        let row3: Vec<C64> = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, r3, -r3, 0.0].iter().map(|&x| c(x)).collect();
        let du = DoubleUnitary::symmetric(row3, s3_rep(3)).unwrap();
        assert!(check_c_condition(&du) < 1e-12);
        let (u, cm) = assemble_double(&du).unwrap();
        assert!(unitarity_residual(&u).unwrap() < 1e-10);
        assert!(unitarity_residual(&cm).unwrap() < 1e-10);
        assert_eq!(operator_schmidt(&u, 3, 3).unwrap().rank, 5);
    }

    #[test]
    fn factorized_m_matches_direct_assembly() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        // the D4 projective rep on both sides has γ = μ² trivial
        let set = d4_projective_irreps();
        let (rep, _) = block_diagonal_rep(&set, &MultiplicityPattern(alloc::vec![1, 1])).unwrap();
        let du0 = DoubleUnitary::symmetric(alloc::vec![c(0.0); 8], rep.clone()).unwrap();
        assert!(du0.gamma().is_trivial());
        let ord = crate::reps::d4_ordinary_irreps();
        let cf = synthesize_c(&ord, &RBlockFamily::random(&ord, &mut rng)).unwrap();
        let du = DoubleUnitary::symmetric(cf, rep).unwrap();
        assert!(check_c_condition(&du) < 1e-12);
        let w = du.w_family();
        assert!(check_w_condition(du.group(), du.rep_a().factors(), &w).unwrap() < 1e-12);
        let m = assemble_m(du.group(), du.rep_a().factors(), &w).unwrap();
        assert!(du.factorized_m().max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn mismatched_gamma_rejected() {
        let rep = s3_rep(3);
        let (_, fs) = crate::groups::d4_projective_factor_system();
        let bad = FactorSystem::from_phases(6, fs.phases()[..36].to_vec()).unwrap();
        let r = DoubleUnitary::with_gamma(alloc::vec![c(1.0); 6], rep.clone(), rep, bad);
        assert!(matches!(r, Err(Error::Validation(_))));
    }
}
