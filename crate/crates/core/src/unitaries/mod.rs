//! The three expansion forms of a bipartite unitary on `H_A ⊗ H_B`, the
//! protocol operators built from them, conversions, and resource bounds.
//!
//! * group form `Σ_f U(f) ⊗ W(f)` with `{U(f)}` projective,
//! * controlled form `Σ_j P_j ⊗ V_j` with orthogonal projectors,
//! * double form `Σ_f c(f) U(f) ⊗ V(f)` with both sides projective.

mod controlled;
mod double;
mod group_form;
mod strength;

pub use controlled::{assemble_controlled, controlled_to_group, group_to_controlled, ControlledUnitary};
pub use double::{assemble_double, c_operator, check_c_condition, DoubleUnitary};
pub use group_form::{assemble_group_unitary, assemble_m, check_w_condition, GroupFormUnitary};
pub use strength::{
    entangling_strength_estimate, resource_bound_check, ResourceBoundReport, DEFAULT_RESTARTS,
};
