//! Numerical tolerances shared across the crate.
//!
//! All quantities are absolute max-abs-entry deviations unless noted.

/// Unitarity residual accepted for matrices that are unitary by construction.
pub const UNITARY: f64 = 1e-10;

/// Relative singular-value cut used for every rank computation.
pub const RANK_REL: f64 = 1e-8;

/// Cocycle, normalization and representation-relation residuals.
pub const COCYCLE: f64 = 1e-10;

/// Unit-modulus check for factor-system phases.
pub const MODULUS: f64 = 1e-12;

/// Per-branch Kraus residuals and proportionality in protocol transcripts.
pub const KRAUS: f64 = 1e-9;

/// Norm deviation tolerated by entropy evaluation before rejecting a state.
pub const STATE_NORM: f64 = 1e-9;

/// Commutator size below which `U(f)` are treated as commuting.
pub const COMMUTING: f64 = 1e-10;

/// Two eigenphase patterns closer than this merge into one projector.
pub const PHASE_MERGE: f64 = 1e-7;

/// Off-diagonal residual accepted when checking simultaneous diagonalization.
pub const DIAGONAL: f64 = 1e-9;
