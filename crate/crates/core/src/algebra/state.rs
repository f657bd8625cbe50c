use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::svd::singular_values;
use super::ComplexMatrix;
use crate::error::shape;
use crate::{tol, Error, Result, C64};

/// Pure state on a tensor product of subsystems, amplitudes in row-major
/// order over `dims` (first subsystem outermost).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(shape("subsystem dimensions must be positive"));
        }
        let total: usize = dims.iter().product();
        if amplitudes.len() != total {
            return Err(shape(format!("{} amplitudes for total dimension {total}", amplitudes.len())));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("state amplitudes must be finite".into()));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Standard basis state `|index⟩` with `index` a flat row-major position.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        if index >= total {
            return Err(shape("basis index out of range"));
        }
        let mut amps = vec![C64::new(0.0, 0.0); total];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// `(1/√n) Σ_k |k⟩|k⟩` on `n ⊗ n`.
    pub fn maximally_entangled(n: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); n * n];
        let a = 1.0 / libm::sqrt(n as f64);
        for k in 0..n {
            amps[k * n + k] = C64::new(a, 0.0);
        }
        Self { dims: vec![n, n], amplitudes: amps }
    }

    pub fn product(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amps.push(a * b);
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        StateVector { dims, amplitudes: amps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn total_dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes.iter().map(C64::norm_sqr).sum())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Validation("cannot normalize the zero vector".into()));
        }
        Ok(Self { dims: self.dims.clone(), amplitudes: self.amplitudes.iter().map(|z| z / n).collect() })
    }

    /// `⟨self|other⟩`.
    pub fn overlap(&self, other: &StateVector) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// Amplitudes reshaped to a matrix whose rows run over the first
    /// `cut_after` subsystems and whose columns run over the rest.
    pub fn bipartition_matrix(&self, cut_after: usize) -> Result<ComplexMatrix> {
        if cut_after == 0 || cut_after >= self.dims.len() {
            return Err(shape(format!(
                "cut after {cut_after} does not split {} subsystems into two non-empty groups",
                self.dims.len()
            )));
        }
        let left: usize = self.dims[..cut_after].iter().product();
        let right: usize = self.dims[cut_after..].iter().product();
        ComplexMatrix::from_vec(left, right, self.amplitudes.clone())
    }
}

/// Entanglement entropy in bits of the bipartition after subsystem `cut_after`:
/// `−Σ λ_j log₂ λ_j` over squared Schmidt coefficients.
pub fn entanglement_entropy(s: &StateVector, cut_after: usize) -> Result<f64> {
    let norm = s.norm();
    if (norm - 1.0).abs() > tol::STATE_NORM {
        return Err(Error::Validation(format!("state norm {norm} is not 1")));
    }
    let m = s.bipartition_matrix(cut_after)?;
    Ok(entropy_of_coefficients(&singular_values(&m)))
}

pub(crate) fn entropy_of_coefficients(sv: &[f64]) -> f64 {
    let total: f64 = sv.iter().map(|s| s * s).sum();
    if total == 0.0 {
        return 0.0;
    }
    sv.iter()
        .map(|s| s * s / total)
        .filter(|&l| l > 1e-300)
        .map(|l| -l * libm::log2(l))
        .sum::<f64>()
        .max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn product_state_has_zero_entropy() {
        let s = StateVector::basis(vec![2, 2], 0).unwrap();
        assert_eq!(entanglement_entropy(&s, 1).unwrap(), 0.0);
    }

    #[test]
    fn bell_state_has_one_bit() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::new(vec![2, 2], vec![c(h), c(0.0), c(0.0), c(h)]).unwrap();
        assert!((entanglement_entropy(&s, 1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn uniform_rank_six_state() {
        let s = StateVector::maximally_entangled(6);
        let e = entanglement_entropy(&s, 1).unwrap();
        assert!((e - libm::log2(6.0)).abs() < 1e-13);
        assert!((e - 2.585).abs() < 1e-3);
    }

    #[test]
    fn rejects_unnormalized_and_bad_cut() {
        let s = StateVector::new(vec![2, 2], vec![c(1.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!(matches!(entanglement_entropy(&s, 1), Err(Error::Validation(_))));
        let t = StateVector::maximally_entangled(2);
        assert!(entanglement_entropy(&t, 0).is_err());
        assert!(entanglement_entropy(&t, 2).is_err());
    }

    #[test]
    fn cut_between_groups_of_subsystems() {
        // |Φ⟩_{02} ⊗ |0⟩_1 arranged as dims (2,2,2) with the pair split by the cut
        let bell = StateVector::maximally_entangled(2);
        let zero = StateVector::basis(vec![2], 0).unwrap();
        let s = bell.product(&zero);
        assert!((entanglement_entropy(&s, 1).unwrap() - 1.0).abs() < 1e-14);
        assert!(entanglement_entropy(&s, 2).unwrap().abs() < 1e-14);
    }
}
