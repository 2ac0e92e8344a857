//! Finite groups, their rational group rings and structural data.

pub mod group;
pub mod hybrid;
pub mod ring;
pub mod structure;

pub use group::{FiniteGroup, GroupJson, GroupSpec};
pub use hybrid::{component_maximal_rows, hybrid_order_basis, is_multiplicatively_closed, maximal_order_basis};
pub use ring::{gr_identity, gr_mat_is_p_integral, gr_mat_mul, GrMatrix, GroupRingElem};
pub use structure::{
    classify_nice, commutator_subgroup, commutator_trace, sylow_subgroup, trace_idempotent, Classification,
};
