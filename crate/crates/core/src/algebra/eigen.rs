use alloc::vec::Vec;

use super::ComplexMatrix;
use crate::error::shape;
use crate::{Error, Result, C64};

const SWEEP_LIMIT: usize = 100;

/// Eigen-decomposition `H = V · diag(λ) · V†` of a Hermitian matrix,
/// eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Cyclic complex Jacobi iteration. Each rotation first removes the phase of
/// the pivot `h_pq`, then applies the real symmetric Jacobi rotation.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    if !h.is_square() {
        return Err(shape("Hermitian eigen-decomposition needs a square matrix"));
    }
    let n = h.rows();
    let herm = h.max_abs_diff(&h.adjoint());
    if herm > 1e-9 * h.max_abs().max(1.0) {
        return Err(Error::Validation("matrix is not Hermitian".into()));
    }
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    for _ in 0..SWEEP_LIMIT {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if libm::sqrt(off) <= 1e-14 * scale || scale == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let c = a[(p, q)];
                let g = c.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = c / g;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let cs = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * cs;
                // G = diag(1, e^{-iφ}) · [[cs, sn], [-sn, cs]]
                let g00 = C64::new(cs, 0.0);
                let g01 = C64::new(sn, 0.0);
                let g10 = -phase.conj() * sn;
                let g11 = phase.conj() * cs;
                for r in 0..n {
                    let (x, y) = (a[(r, p)], a[(r, q)]);
                    a[(r, p)] = x * g00 + y * g10;
                    a[(r, q)] = x * g01 + y * g11;
                    let (x, y) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = x * g00 + y * g10;
                    v[(r, q)] = x * g01 + y * g11;
                }
                for r in 0..n {
                    let (x, y) = (a[(p, r)], a[(q, r)]);
                    a[(p, r)] = g00.conj() * x + g10.conj() * y;
                    a[(q, r)] = g01.conj() * x + g11.conj() * y;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random::random_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonalizes_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 5, 8] {
            let x = random_matrix(n, n, &mut rng);
            let h = &x + &x.adjoint();
            let e = hermitian_eigen(&h).unwrap();
            let lam: Vec<C64> = e.values.iter().map(|&l| C64::new(l, 0.0)).collect();
            let back = &(&e.vectors * &ComplexMatrix::diagonal(&lam)) * &e.vectors.adjoint();
            assert!(back.max_abs_diff(&h) < 1e-12, "n={n}");
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn degenerate_spectrum() {
        // projector onto a 2-dim subspace of C^4 has eigenvalues 0,0,1,1
        let u = [C64::new(0.5, 0.0), C64::new(0.5, 0.0), C64::new(0.0, 0.5), C64::new(0.0, -0.5)];
        let w = [C64::new(0.5, 0.0), C64::new(-0.5, 0.0), C64::new(0.5, 0.0), C64::new(0.5, 0.0)];
        let p = &ComplexMatrix::outer(&u, &u) + &ComplexMatrix::outer(&w, &w);
        let e = hermitian_eigen(&p).unwrap();
        for (got, want) in e.values.iter().zip([0.0, 0.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(hermitian_eigen(&m).is_err());
    }
}
