use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::group_form::{assemble_group_unitary, GroupFormUnitary};
use crate::algebra::random::complex_gaussian;
use crate::algebra::{hermitian_eigen, unitarity_residual, ComplexMatrix};
use crate::fourier::WFamily;
use crate::groups::{cyclic, root_of_unity, FactorSystem};
use crate::reps::ProjectiveRep;
use crate::{tol, Error, Result, C64};

/// `U = Σ_j P_j ⊗ V_j` with `{P_j}` a decomposition of the identity into
/// orthogonal projectors of any rank and each `V_j` unitary.
#[derive(Clone, Debug)]
pub struct ControlledUnitary {
    projectors: Vec<ComplexMatrix>,
    unitaries: Vec<ComplexMatrix>,
}

impl ControlledUnitary {
    pub fn new(projectors: Vec<ComplexMatrix>, unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        let n = projectors.len();
        if n == 0 || unitaries.len() != n {
            return Err(Error::Shape(format!("{n} projectors and {} unitaries", unitaries.len())));
        }
        let d_a = projectors[0].rows();
        let d_b = unitaries[0].rows();
        for (j, p) in projectors.iter().enumerate() {
            if p.rows() != d_a || p.cols() != d_a {
                return Err(Error::Shape(format!("projector {j} is not {d_a}x{d_a}")));
            }
        }
        for (j, v) in unitaries.iter().enumerate() {
            if v.rows() != d_b || v.cols() != d_b {
                return Err(Error::Shape(format!("unitary {j} is not {d_b}x{d_b}")));
            }
            let r = unitarity_residual(v)?;
            if r > tol::UNITARY {
                return Err(Error::Validation(format!("V_{j} is not unitary (residual {r:.3e})")));
            }
        }
        let mut sum = ComplexMatrix::zeros(d_a, d_a);
        for (j, p) in projectors.iter().enumerate() {
            let herm = p.max_abs_diff(&p.adjoint());
            if herm > tol::UNITARY {
                return Err(Error::Validation(format!("P_{j} is not Hermitian (residual {herm:.3e})")));
            }
            for (k, q) in projectors.iter().enumerate() {
                let prod = p * q;
                let want = if j == k { p.clone() } else { ComplexMatrix::zeros(d_a, d_a) };
                let r = prod.max_abs_diff(&want);
                if r > tol::UNITARY {
                    return Err(Error::Validation(format!("P_{j} P_{k} != δ P_{j} (residual {r:.3e})")));
                }
            }
            sum = &sum + p;
        }
        let r = sum.max_abs_diff(&ComplexMatrix::identity(d_a));
        if r > tol::UNITARY {
            return Err(Error::Validation(format!("projectors do not sum to I (residual {r:.3e})")));
        }
        Ok(Self { projectors, unitaries })
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    /// Number of terms `N`.
    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn d_a(&self) -> usize {
        self.projectors[0].rows()
    }

    pub fn d_b(&self) -> usize {
        self.unitaries[0].rows()
    }

    pub fn assembled(&self) -> ComplexMatrix {
        let d = self.d_a() * self.d_b();
        self.projectors
            .iter()
            .zip(&self.unitaries)
            .fold(ComplexMatrix::zeros(d, d), |acc, (p, v)| &acc + &p.kron(v))
    }
}

pub fn assemble_controlled(
    projectors: Vec<ComplexMatrix>,
    unitaries: Vec<ComplexMatrix>,
) -> Result<(ControlledUnitary, ComplexMatrix)> {
    let cu = ControlledUnitary::new(projectors, unitaries)?;
    let m = cu.assembled();
    Ok((cu, m))
}

/// Group form over `Z_N`: `U(j) = Σ_k ω^{jk} P_k` and `W(j) = (1/N) Σ_k ω^{−jk} V_k`.
pub fn controlled_to_group(cu: &ControlledUnitary) -> Result<GroupFormUnitary> {
    let n = cu.len();
    let (d_a, d_b) = (cu.d_a(), cu.d_b());
    let us = (0..n)
        .map(|j| {
            cu.projectors.iter().enumerate().fold(ComplexMatrix::zeros(d_a, d_a), |acc, (k, p)| {
                &acc + &p.scale(root_of_unity((j * k) as i64, n as u64))
            })
        })
        .collect();
    let ws = (0..n)
        .map(|j| {
            cu.unitaries.iter().enumerate().fold(ComplexMatrix::zeros(d_b, d_b), |acc, (k, v)| {
                &acc + &v.scale(root_of_unity(-((j * k) as i64), n as u64) / n as f64)
            })
        })
        .collect();
    let rep = ProjectiveRep::new(cyclic(n)?, FactorSystem::trivial(n), us)?;
    assemble_group_unitary(&rep, &WFamily::new(ws)?)
}

const DIAGONALIZATION_ATTEMPTS: u64 = 4;

/// Controlled form of a group-form unitary whose `U(f)` commute.
///
/// A random Hermitian combination `Σ_f (z_f U(f) + conj(z_f) U(f)†)` is
/// diagonalized; every `U(f)` must then be diagonal in that basis. Basis
/// vectors whose eigenphase patterns `(e^{iφ(f)})_f` agree are grouped into one
/// projector `P_λ`, and `V_λ = Σ_f e^{iφ(λ,f)} W(f)`.
pub fn group_to_controlled(gfu: &GroupFormUnitary) -> Result<ControlledUnitary> {
    let us = gfu.rep().matrices();
    let n = us.len();
    for f in 0..n {
        for g in (f + 1)..n {
            let comm = (&us[f] * &us[g]).max_abs_diff(&(&us[g] * &us[f]));
            if comm > tol::COMMUTING {
                return Err(Error::Precondition(format!("U({f}) and U({g}) do not commute ({comm:.3e})")));
            }
        }
    }
    let d_a = gfu.d_a();
    let mut last_err = None;
    for attempt in 0..DIAGONALIZATION_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt);
        let mut h = ComplexMatrix::zeros(d_a, d_a);
        for u in us {
            let z = complex_gaussian(&mut rng);
            h = &h + &(&u.scale(z) + &u.adjoint().scale(z.conj()));
        }
        let eig = hermitian_eigen(&h)?;
        let basis = &eig.vectors;
        let mut patterns: Vec<Vec<C64>> = alloc::vec![Vec::with_capacity(n); d_a];
        let mut off = 0.0f64;
        for u in us {
            let d = &(&basis.adjoint() * u) * basis;
            for i in 0..d_a {
                for j in 0..d_a {
                    if i != j {
                        off = off.max(d[(i, j)].norm());
                    }
                }
                patterns[i].push(d[(i, i)]);
            }
        }
        if off > tol::DIAGONAL {
            last_err = Some(Error::Precondition(format!(
                "U(f) not simultaneously diagonal in the trial basis ({off:.3e})"
            )));
            continue;
        }
        // group basis vectors by eigenphase pattern
        let mut classes: Vec<(Vec<C64>, Vec<usize>)> = Vec::new();
        for (i, pat) in patterns.iter().enumerate() {
            let hit = classes.iter_mut().find(|(rep, _)| {
                rep.iter().zip(pat).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < tol::PHASE_MERGE
            });
            match hit {
                Some((_, members)) => members.push(i),
                None => classes.push((pat.clone(), alloc::vec![i])),
            }
        }
        let mut projectors = Vec::with_capacity(classes.len());
        let mut unitaries = Vec::with_capacity(classes.len());
        for (pat, members) in &classes {
            let mut p = ComplexMatrix::zeros(d_a, d_a);
            for &i in members {
                let v = basis.column(i);
                p = &p + &ComplexMatrix::outer(&v, &v);
            }
            let v = pat
                .iter()
                .zip(gfu.w().matrices())
                .fold(ComplexMatrix::zeros(gfu.d_b(), gfu.d_b()), |acc, (&ph, w)| &acc + &w.scale(ph));
            projectors.push(p);
            unitaries.push(v);
        }
        return ControlledUnitary::new(projectors, unitaries);
    }
    Err(last_err.unwrap_or_else(|| Error::Precondition("simultaneous diagonalization failed".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::phase_aligned_distance;
    use crate::algebra::random::random_unitary;
    use crate::groups::cyclic;
    use crate::reps::regular_projective_rep;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    fn cnot() -> ControlledUnitary {
        ControlledUnitary::new(
            alloc::vec![ComplexMatrix::dyad(2, 0, 0), ComplexMatrix::dyad(2, 1, 1)],
            alloc::vec![ComplexMatrix::identity(2), x()],
        )
        .unwrap()
    }

    #[test]
    fn cnot_assembles() {
        let want = ComplexMatrix::from_real(4, 4, &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.]).unwrap();
        assert_eq!(cnot().assembled(), want);
    }

    #[test]
    fn rank_two_projectors() {
        let p0 = ComplexMatrix::diagonal(&[c(1.0), c(1.0), c(0.0), c(0.0)]);
        let p1 = ComplexMatrix::diagonal(&[c(0.0), c(0.0), c(1.0), c(1.0)]);
        let (_, m) = assemble_controlled(alloc::vec![p0, p1], alloc::vec![ComplexMatrix::identity(3), ComplexMatrix::identity(3)]).unwrap();
        assert_eq!(m.rows(), 12);
        assert!(unitarity_residual(&m).unwrap() < 1e-15);
    }

    #[test]
    fn qutrit_phase_and_round_trip() {
        let ps: Vec<ComplexMatrix> = (0..3).map(|j| ComplexMatrix::dyad(3, j, j)).collect();
        let vs: Vec<ComplexMatrix> = (0..3)
            .map(|j| ComplexMatrix::diagonal(&[c(1.0), root_of_unity(j as i64, 3), root_of_unity(2 * j as i64, 3)]))
            .collect();
        let (cu, m) = assemble_controlled(ps, vs).unwrap();
        // diagonal ω^{jk}
        for j in 0..3 {
            for k in 0..3 {
                assert!((m[(j * 3 + k, j * 3 + k)] - root_of_unity((j * k) as i64, 3)).norm() < 1e-15);
            }
        }
        let g = controlled_to_group(&cu).unwrap();
        assert_eq!(g.group_order(), 3);
        assert!(g.assembled().max_abs_diff(&m) < 1e-12);
        let back = group_to_controlled(&g).unwrap();
        assert_eq!(back.len(), 3);
        assert!(back.assembled().max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn cnot_group_form_by_hand() {
        let g = controlled_to_group(&cnot()).unwrap();
        let z = ComplexMatrix::diagonal(&[c(1.0), c(-1.0)]);
        assert!(g.rep().matrix(1).max_abs_diff(&z) < 1e-15);
        let plus = (&ComplexMatrix::identity(2) + &x()).scale_real(0.5);
        let minus = (&ComplexMatrix::identity(2) - &x()).scale_real(0.5);
        assert!(g.w().matrix(0).max_abs_diff(&plus) < 1e-15);
        assert!(g.w().matrix(1).max_abs_diff(&minus) < 1e-15);
        let back = group_to_controlled(&g).unwrap();
        assert_eq!(back.len(), 2);
        assert!(back.assembled().max_abs_diff(&cnot().assembled()) < 1e-10);
    }

    #[test]
    fn single_term() {
        let v = ComplexMatrix::diagonal(&[c(1.0), C64::new(0.0, 1.0)]);
        let cu = ControlledUnitary::new(alloc::vec![ComplexMatrix::identity(2)], alloc::vec![v.clone()]).unwrap();
        let g = controlled_to_group(&cu).unwrap();
        assert_eq!(g.rep().matrix(0), &ComplexMatrix::identity(2));
        assert_eq!(g.w().matrix(0), &v);
    }

    #[test]
    fn all_identity_gives_one_projector() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rep = ProjectiveRep::new(cyclic(3).unwrap(), FactorSystem::trivial(3), alloc::vec![ComplexMatrix::identity(2); 3]).unwrap();
        // W(f) = V/3 for each f gives Σ W(f) = V
        let v = random_unitary(2, &mut rng);
        let w = WFamily::new(alloc::vec![v.scale_real(1.0 / 3.0); 3]).unwrap();
        let g = assemble_group_unitary(&rep, &w).unwrap();
        let cu = group_to_controlled(&g).unwrap();
        assert_eq!(cu.len(), 1);
        assert!(cu.unitaries()[0].max_abs_diff(&v) < 1e-12);
    }

    #[test]
    fn cyclic_shift_splits_into_rank_one_projectors() {
        let g = cyclic(4).unwrap();
        let rep = regular_projective_rep(&g, &FactorSystem::trivial(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let set = crate::reps::cyclic_irreps(4).unwrap();
        let w = crate::fourier::synthesize_w(&set, &crate::fourier::QBlockFamily::random(&set, 2, &mut rng)).unwrap();
        let gf = assemble_group_unitary(&rep, &w).unwrap();
        let cu = group_to_controlled(&gf).unwrap();
        assert_eq!(cu.len(), 4);
        for p in cu.projectors() {
            assert!((p.trace().re - 1.0).abs() < 1e-12);
        }
        assert!(phase_aligned_distance(&cu.assembled(), gf.assembled()) < 1e-10);
    }

    #[test]
    fn rejects_non_commuting_and_bad_projectors() {
        let set = crate::reps::s3_irreps();
        let rep = set.irreps()[2].rep.clone();
        let w = WFamily::new(alloc::vec![ComplexMatrix::identity(1); 6]).unwrap();
        let gf = assemble_group_unitary(&rep, &w).unwrap();
        assert!(matches!(group_to_controlled(&gf), Err(Error::Precondition(_))));

        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let r = ControlledUnitary::new(alloc::vec![half.clone(), half], alloc::vec![ComplexMatrix::identity(2); 2]);
        assert!(matches!(r, Err(Error::Validation(_))));
        let r = ControlledUnitary::new(alloc::vec![ComplexMatrix::dyad(2, 0, 0)], alloc::vec![ComplexMatrix::identity(2)]);
        assert!(matches!(r, Err(Error::Validation(_))));
    }
}
