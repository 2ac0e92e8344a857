pub mod arith;
pub mod cli;
pub mod comm_fitting;
pub mod conductors;
pub mod error;
pub mod group_algebra;
pub mod invariants;
pub mod matrix_ring;
mod util;
pub mod wedderburn;

pub use error::{Error, Result};
