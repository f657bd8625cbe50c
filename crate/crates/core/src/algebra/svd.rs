//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Columns are rotated pairwise until mutually orthogonal; the column norms
//! are then the singular values. Sweeps stop once the off-diagonal part of
//! the Gram matrix has Frobenius norm below `1e-14·‖A‖²_F`.

use alloc::vec::Vec;

use super::ComplexMatrix;
use crate::C64;

const SWEEP_LIMIT: usize = 80;
const CONVERGENCE: f64 = 1e-14;

/// `A = U · diag(σ) · V†` with `σ` sorted in descending order.
///
/// `u` is `m×k`, `v` is `n×k` with `k = min(m, n)`. Columns of `u` that
/// belong to vanishing singular values are left zero.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows() < a.cols() {
        let t = jacobi_tall(&a.adjoint());
        return Svd { u: t.v, singular_values: t.singular_values, v: t.u };
    }
    jacobi_tall(a)
}

pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// Number of singular values above `rel_tol × σ_max`; 0 for the zero matrix.
pub fn rank_with_threshold(m: &ComplexMatrix, rel_tol: f64) -> usize {
    count_above(&singular_values(m), rel_tol)
}

pub(crate) fn count_above(sv: &[f64], rel_tol: f64) -> usize {
    let max = sv.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * max).count()
}

// Column-major working copy: cols[j][i] = a(i, j).
fn jacobi_tall(a: &ComplexMatrix) -> Svd {
    let (m, n) = (a.rows(), a.cols());
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect())
        .collect();

    let norm_sq: f64 = a.as_slice().iter().map(C64::norm_sqr).sum();
    if norm_sq > 0.0 {
        for _ in 0..SWEEP_LIMIT {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    let alpha: f64 = cols[i].iter().map(C64::norm_sqr).sum();
                    let beta: f64 = cols[j].iter().map(C64::norm_sqr).sum();
                    let gamma: C64 = cols[i].iter().zip(&cols[j]).map(|(x, y)| x.conj() * y).sum();
                    let g = gamma.norm();
                    off += g * g;
                    if g == 0.0 || g <= f64::EPSILON * 1e-3 * libm::sqrt(alpha * beta) {
                        continue;
                    }
                    let phase = gamma / g;
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                    let c = 1.0 / libm::sqrt(1.0 + t * t);
                    let s = c * t;
                    // [col_i, col_j] ← [col_i, col_j] · [[c, s·e^{iφ}], [−s·e^{−iφ}, c]]
                    let p_ij = -phase.conj() * s;
                    let p_ji = phase * s;
                    rotate(&mut cols, i, j, c, p_ij, p_ji);
                    rotate(&mut v, i, j, c, p_ij, p_ji);
                }
            }
            if libm::sqrt(off) < CONVERGENCE * norm_sq {
                break;
            }
        }
    }

    let mut order: Vec<(f64, usize)> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (libm::sqrt(c.iter().map(C64::norm_sqr).sum()), j))
        .collect();
    order.sort_by(|x, y| y.0.total_cmp(&x.0));

    let sigma_max = order.first().map_or(0.0, |o| o.0);
    let mut u = ComplexMatrix::zeros(m, n);
    let mut vm = ComplexMatrix::zeros(n, n);
    let mut singular = Vec::with_capacity(n);
    for (k, &(s, j)) in order.iter().enumerate() {
        singular.push(s);
        if s > sigma_max * f64::EPSILON * 1e-2 && s > 0.0 {
            for i in 0..m {
                u[(i, k)] = cols[j][i] / s;
            }
        }
        for i in 0..n {
            vm[(i, k)] = v[j][i];
        }
    }
    Svd { u, singular_values: singular, v: vm }
}

fn rotate(cols: &mut [Vec<C64>], i: usize, j: usize, c: f64, p_ij: C64, p_ji: C64) {
    let (left, right) = cols.split_at_mut(j);
    let (ci, cj) = (&mut left[i], &mut right[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let xi = *x;
        let yj = *y;
        *x = xi * c + yj * p_ij;
        *y = xi * p_ji + yj * c;
    }
}
