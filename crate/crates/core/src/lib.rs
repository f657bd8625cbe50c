//! Bipartite nonlocal unitaries in group form and the entanglement-assisted
//! local protocols that carry them out.
//!
//! A unitary on `H_A ⊗ H_B` written as `Σ_f U(f) ⊗ W(f)`, with `{U(f)}` a
//! projective representation of a finite group `G`, can be implemented by two
//! parties sharing a maximally entangled state of Schmidt rank `|G|` and
//! exchanging `log₂|G|` classical bits in each direction. This crate builds
//! the pieces needed to construct, check and simulate such protocols:
//!
//! * [`algebra`]: a small dense complex-matrix kernel (products, tensor
//!   products, Jacobi SVD, operator Schmidt decomposition, entropies).
//! * [`groups`]: finite groups as multiplication tables and factor systems.
//! * [`reps`]: projective representations and complete irreducible sets.
//! * [`fourier`]: the group Fourier transform between `W(f)` and unitary
//!   blocks `Q^(λ)` (or scalar `c(f)` and blocks `R^(λ)`).
//! * [`unitaries`]: the controlled, group and double-unitary forms, the
//!   protocol operators `M` and `C`, conversions and resource bounds.
//! * [`protocol`]: exhaustive branch-by-branch simulation of the circuits and
//!   the Kraus-proportionality check.
//! * [`catalog`]: named, ready-built instances of the worked examples.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod algebra;
pub mod catalog;
mod error;
pub mod fourier;
pub mod groups;
pub mod protocol;
pub mod reps;
pub mod tol;
pub mod unitaries;
mod validation;

pub use error::Error;
pub use num_complex::Complex64 as C64;
pub use validation::{Issue, ValidationReport};

pub type Result<T> = core::result::Result<T, Error>;
