use alloc::format;

use crate::algebra::{unitarity_residual, ComplexMatrix};
use crate::fourier::WFamily;
use crate::groups::{FactorSystem, FiniteGroup};
use crate::reps::ProjectiveRep;
use crate::{Error, Result};

/// `U = Σ_f U(f) ⊗ W(f)` together with its pieces.
#[derive(Clone, Debug)]
pub struct GroupFormUnitary {
    rep: ProjectiveRep,
    w: WFamily,
    assembled: ComplexMatrix,
    residual: f64,
}

impl GroupFormUnitary {
    pub fn rep(&self) -> &ProjectiveRep {
        &self.rep
    }

    pub fn w(&self) -> &WFamily {
        &self.w
    }

    pub fn assembled(&self) -> &ComplexMatrix {
        &self.assembled
    }

    /// Unitarity residual of the assembled matrix.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn d_a(&self) -> usize {
        self.rep.dim()
    }

    pub fn d_b(&self) -> usize {
        self.w.d_b()
    }

    pub fn group_order(&self) -> usize {
        self.rep.group().order()
    }

    /// `M = Σ_f R(f) ⊗ W(f)` for this form.
    pub fn m_operator(&self) -> ComplexMatrix {
        assemble_m(self.rep.group(), self.rep.factors(), &self.w).expect("sizes checked at assembly")
    }

    /// Largest residual of the unitarity condition on `W`.
    pub fn w_condition(&self) -> f64 {
        check_w_condition(self.rep.group(), self.rep.factors(), &self.w).expect("sizes checked at assembly")
    }
}

pub fn assemble_group_unitary(rep: &ProjectiveRep, w: &WFamily) -> Result<GroupFormUnitary> {
    let n = rep.group().order();
    if w.len() != n {
        return Err(Error::Shape(format!("{} W operators for a group of order {n}", w.len())));
    }
    let d = rep.dim() * w.d_b();
    let mut acc = ComplexMatrix::zeros(d, d);
    for (u, wf) in rep.matrices().iter().zip(w.matrices()) {
        acc = &acc + &u.kron(wf);
    }
    let residual = unitarity_residual(&acc)?;
    Ok(GroupFormUnitary { rep: rep.clone(), w: w.clone(), assembled: acc, residual })
}

fn check_sizes(group: &FiniteGroup, fs: &FactorSystem, w: &WFamily) -> Result<()> {
    let n = group.order();
    if fs.order() != n || w.len() != n {
        return Err(Error::Shape(format!(
            "group of order {n}, factor system of order {}, {} W operators",
            fs.order(),
            w.len()
        )));
    }
    Ok(())
}

/// `max_g ‖Σ_f conj(μ(f,g)) W(f)† W(fg) − δ(e,g) I‖_max`.
pub fn check_w_condition(group: &FiniteGroup, fs: &FactorSystem, w: &WFamily) -> Result<f64> {
    check_sizes(group, fs, w)?;
    let n = group.order();
    let d_b = w.d_b();
    let adj: alloc::vec::Vec<ComplexMatrix> = w.matrices().iter().map(ComplexMatrix::adjoint).collect();
    let mut worst = 0.0f64;
    for g in 0..n {
        let mut acc = if g == 0 { -&ComplexMatrix::identity(d_b) } else { ComplexMatrix::zeros(d_b, d_b) };
        for f in 0..n {
            let term = &adj[f] * w.matrix(group.mul(f, g));
            acc = &acc + &term.scale(fs.mu(f, g).conj());
        }
        worst = worst.max(acc.max_abs());
    }
    Ok(worst)
}

/// `M = Σ_f R(f) ⊗ W(f)` on `H_b ⊗ H_B`, built block-wise:
/// block `(g, f)` is `μ(g, g⁻¹f) W(g⁻¹f)`.
pub fn assemble_m(group: &FiniteGroup, fs: &FactorSystem, w: &WFamily) -> Result<ComplexMatrix> {
    check_sizes(group, fs, w)?;
    let n = group.order();
    let d_b = w.d_b();
    let mut m = ComplexMatrix::zeros(n * d_b, n * d_b);
    for g in 0..n {
        let gi = group.inverse(g);
        for f in 0..n {
            let h = group.mul(gi, f);
            m.set_block(g * d_b, f * d_b, &w.matrix(h).scale(fs.mu(g, h)));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{synthesize_w, QBlockFamily};
    use crate::groups::cyclic;
    use crate::reps::{regular_projective_rep, s3_irreps, block_diagonal_rep, MultiplicityPattern};
    use crate::C64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn z2_rep() -> ProjectiveRep {
        let z = ComplexMatrix::diagonal(&[c(1.0), c(-1.0)]);
        ProjectiveRep::new(cyclic(2).unwrap(), FactorSystem::trivial(2), alloc::vec![ComplexMatrix::identity(2), z])
            .unwrap()
    }

    #[test]
    fn controlled_z_from_projector_family() {
        let w = WFamily::new(alloc::vec![
            ComplexMatrix::diagonal(&[c(1.0), c(0.0)]),
            ComplexMatrix::diagonal(&[c(0.0), c(1.0)]),
        ])
        .unwrap();
        let u = assemble_group_unitary(&z2_rep(), &w).unwrap();
        // I⊗diag(1,0) + Z⊗diag(0,1) = diag(1,1,1,−1)
        assert_eq!(u.assembled(), &ComplexMatrix::diagonal(&[c(1.0), c(1.0), c(1.0), c(-1.0)]));
        assert_eq!(u.residual(), 0.0);
        assert_eq!(u.w_condition(), 0.0);
    }

    #[test]
    fn delta_family_is_identity() {
        let w = WFamily::new(alloc::vec![ComplexMatrix::identity(3), ComplexMatrix::zeros(3, 3)]).unwrap();
        let u = assemble_group_unitary(&z2_rep(), &w).unwrap();
        assert_eq!(u.assembled(), &ComplexMatrix::identity(6));
        assert_eq!(u.m_operator(), ComplexMatrix::identity(6));
    }

    #[test]
    fn scaled_identity_residual() {
        let w = WFamily::new(alloc::vec![ComplexMatrix::identity(2).scale_real(2.0), ComplexMatrix::zeros(2, 2)]).unwrap();
        let r = check_w_condition(&cyclic(2).unwrap(), &FactorSystem::trivial(2), &w).unwrap();
        assert_eq!(r, 3.0);
    }

    #[test]
    fn m_matches_regular_rep_sum_and_is_circulant_for_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let set = crate::reps::cyclic_irreps(3).unwrap();
        let w = synthesize_w(&set, &QBlockFamily::random(&set, 2, &mut rng)).unwrap();
        let g = cyclic(3).unwrap();
        let fs = FactorSystem::trivial(3);
        let m = assemble_m(&g, &fs, &w).unwrap();
        let r = regular_projective_rep(&g, &fs).unwrap();
        let mut sum = ComplexMatrix::zeros(6, 6);
        for f in 0..3 {
            sum = &sum + &r.matrix(f).kron(w.matrix(f));
        }
        assert!(m.max_abs_diff(&sum) < 1e-15);
        // block (g, f) depends only on f − g
        for a in 0..3 {
            for b in 0..3 {
                let shifted = m.block(((a + 1) % 3) * 2, ((b + 1) % 3) * 2, 2, 2);
                assert!(m.block(a * 2, b * 2, 2, 2).max_abs_diff(&shifted) < 1e-15);
            }
        }
        assert!(unitarity_residual(&m).unwrap() < 1e-12);
    }

    #[test]
    fn s3_qutrit_from_random_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let set = s3_irreps();
        let (rep, _) = block_diagonal_rep(&set, &MultiplicityPattern(alloc::vec![0, 1, 1])).unwrap();
        let w = synthesize_w(&set, &QBlockFamily::random(&set, 3, &mut rng)).unwrap();
        let u = assemble_group_unitary(&rep, &w).unwrap();
        assert!(u.residual() < 1e-10);
        assert!(u.w_condition() < 1e-10);
        assert!(unitarity_residual(&u.m_operator()).unwrap() < 1e-10);
    }
}
