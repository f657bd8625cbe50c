use alloc::format;
use alloc::vec::Vec;

use super::svd::{count_above, svd};
use super::ComplexMatrix;
use crate::error::shape;
use crate::{tol, Result};

/// One product term `σ · A ⊗ B` with `Tr(A†A) = Tr(B†B) = 1`.
#[derive(Clone, Debug)]
pub struct SchmidtTerm {
    pub coefficient: f64,
    pub left: ComplexMatrix,
    pub right: ComplexMatrix,
}

/// Operator Schmidt decomposition `u = Σ_k σ_k A_k ⊗ B_k`, coefficients
/// descending, factors orthonormal under the trace inner product.
///
/// Only terms above the rank threshold are kept, so `terms.len() == rank`.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    pub terms: Vec<SchmidtTerm>,
    pub rank: usize,
    /// Every singular value of the reshaped matrix, kept or not.
    pub coefficients: Vec<f64>,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else {
            return ComplexMatrix::zeros(1, 1);
        };
        let mut acc = first.left.kron(&first.right).scale_real(first.coefficient);
        for t in it {
            acc = &acc + &t.left.kron(&t.right).scale_real(t.coefficient);
        }
        acc
    }
}

/// Rearranges `u_{(i,p),(j,q)}` on `dA ⊗ dB` into the `dA² × dB²` matrix
/// indexed `((i,j),(p,q))`, A-indices outermost.
pub fn schmidt_reshape(u: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<ComplexMatrix> {
    let n = d_a * d_b;
    if d_a == 0 || d_b == 0 || u.rows() != n || u.cols() != n {
        return Err(shape(format!(
            "operator is {}x{}, expected {n}x{n} for dims {d_a}⊗{d_b}",
            u.rows(),
            u.cols()
        )));
    }
    Ok(ComplexMatrix::from_fn(d_a * d_a, d_b * d_b, |row, col| {
        let (i, j) = (row / d_a, row % d_a);
        let (p, q) = (col / d_b, col % d_b);
        u[(i * d_b + p, j * d_b + q)]
    }))
}

pub fn operator_schmidt(u: &ComplexMatrix, d_a: usize, d_b: usize) -> Result<SchmidtDecomposition> {
    operator_schmidt_with_tol(u, d_a, d_b, tol::RANK_REL)
}

pub fn operator_schmidt_with_tol(
    u: &ComplexMatrix,
    d_a: usize,
    d_b: usize,
    rel_tol: f64,
) -> Result<SchmidtDecomposition> {
    let reshaped = schmidt_reshape(u, d_a, d_b)?;
    let dec = svd(&reshaped);
    let rank = count_above(&dec.singular_values, rel_tol);
    let terms = (0..rank)
        .map(|k| SchmidtTerm {
            coefficient: dec.singular_values[k],
            left: ComplexMatrix::from_fn(d_a, d_a, |i, j| dec.u[(i * d_a + j, k)]),
            // u = Σ σ_k u_k v_k†, so the B factor carries conj(v_k)
            right: ComplexMatrix::from_fn(d_b, d_b, |p, q| dec.v[(p * d_b + q, k)].conj()),
        })
        .collect();
    Ok(SchmidtDecomposition { terms, rank, coefficients: dec.singular_values })
}

/// Operator Schmidt rank at the given relative threshold.
pub fn schmidt_rank(u: &ComplexMatrix, d_a: usize, d_b: usize, rel_tol: f64) -> Result<usize> {
    Ok(operator_schmidt_with_tol(u, d_a, d_b, rel_tol)?.rank)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random::random_unitary;
    use crate::algebra::svd::rank_with_threshold;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cnot() -> ComplexMatrix {
        ComplexMatrix::from_real(
            4,
            4,
            &[1., 0., 0., 0., 0., 1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.],
        )
        .unwrap()
    }

    #[test]
    fn identity_has_rank_one() {
        assert_eq!(operator_schmidt(&ComplexMatrix::identity(4), 2, 2).unwrap().rank, 1);
    }

    #[test]
    fn cnot_has_rank_two() {
        let d = operator_schmidt(&cnot(), 2, 2).unwrap();
        assert_eq!(d.rank, 2);
        // brute-force oracle: reshaped CNOT rows are (1,0,0,1),(0,0,0,0),(0,0,0,0),(1,0,0,-1)
        // up to the X block, giving two equal singular values √2
        let sq2 = libm::sqrt(2.0);
        assert!((d.coefficients[0] - sq2).abs() < 1e-14);
        assert!((d.coefficients[1] - sq2).abs() < 1e-14);
    }

    #[test]
    fn shape_mismatch() {
        assert!(operator_schmidt(&ComplexMatrix::identity(4), 3, 2).is_err());
    }

    #[test]
    fn factors_are_orthonormal_and_reconstruct() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary(6, &mut rng);
        let d = operator_schmidt(&u, 2, 3).unwrap();
        assert!(d.reconstruct().max_abs_diff(&u) < 1e-10);
        for (a, ta) in d.terms.iter().enumerate() {
            for (b, tb) in d.terms.iter().enumerate() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((ta.left.inner(&tb.left) - want).norm() < 1e-10);
                assert!((ta.right.inner(&tb.right) - want).norm() < 1e-10);
            }
        }
        let reshaped = schmidt_reshape(&u, 2, 3).unwrap();
        assert_eq!(d.rank, rank_with_threshold(&reshaped, tol::RANK_REL));
    }
}
