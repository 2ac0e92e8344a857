//! Exact scalar and lattice kernel.

// Elimination loops read best with explicit row and column indices.
#![allow(clippy::needless_range_loop)]

pub mod cyclo;
pub mod lattice;
pub mod linalg;
pub mod modp;
pub mod rational;
pub mod valuation;

pub use cyclo::CycNum;
pub use lattice::{hnf, lattice_index, lattice_member, snf, Base, IntLattice, LatticeIndex};
pub use rational::Rational;
pub use valuation::{p_valuation, LocalField, PrimeData, Val};
