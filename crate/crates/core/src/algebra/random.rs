//! Pseudorandom matrices and states for tests, estimators and synthetic families.

use alloc::vec::Vec;

use rand::Rng;

use super::ComplexMatrix;
use crate::C64;

/// Standard normal sample via Box–Muller.
pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng)) * core::f64::consts::FRAC_1_SQRT_2
}

/// Matrix of i.i.d. complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary: Gram–Schmidt on a Gaussian matrix (the implied
/// `R` factor has a positive diagonal, which fixes the column phases).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = random_matrix(n, n, rng);
        let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut degenerate = false;
        for j in 0..n {
            let mut col = g.column(j);
            // two passes keep the columns orthogonal to machine precision
            for _ in 0..2 {
                for prev in &q {
                    let proj: C64 = prev.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
                    for (c, p) in col.iter_mut().zip(prev) {
                        *c -= proj * p;
                    }
                }
            }
            let norm = libm::sqrt(col.iter().map(C64::norm_sqr).sum());
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            col.iter_mut().for_each(|c| *c /= norm);
            q.push(col);
        }
        if !degenerate {
            return ComplexMatrix::from_fn(n, n, |i, j| q[j][i]);
        }
    }
}

/// Uniformly random unit vector in `C^n`.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
    let norm = libm::sqrt(v.iter().map(C64::norm_sqr).sum());
    v.iter_mut().for_each(|z| *z /= norm);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unitarity_residual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..9 {
            assert!(unitarity_residual(&random_unitary(n, &mut rng)).unwrap() < 1e-13);
        }
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xs: Vec<f64> = (0..20000).map(|_| gaussian(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.03);
        assert!((var - 1.0).abs() < 0.05);
    }
}
