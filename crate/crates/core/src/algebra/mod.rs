//! Dense complex linear algebra sized for the problems here (at most a few
//! hundred rows).

pub mod eigen;
pub mod fmt;
mod matrix;
pub mod random;
pub mod schmidt;
pub mod state;
pub mod svd;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use matrix::{phase_aligned_distance, sum_of_products, tensor_product, unitarity_residual, ComplexMatrix};
pub use schmidt::{operator_schmidt, operator_schmidt_with_tol, schmidt_rank, SchmidtDecomposition, SchmidtTerm};
pub use state::{entanglement_entropy, StateVector};
pub use svd::{rank_with_threshold, singular_values, svd, Svd};
