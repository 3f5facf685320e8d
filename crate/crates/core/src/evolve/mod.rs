//! Exact evolution of a compiled machine in the one-excitation cursor
//! sector.
//!
//! The sector holds register ⊗ cursor site ⊗ counter; see [`SectorBasis`]
//! for the index layout.

mod audit;
mod hamiltonian;
mod logical;
mod observables;
mod propagate;
mod sector;

pub use audit::{audit_conservation, audit_from, AuditReport};
pub use hamiltonian::{assemble, SparseHamiltonian};
pub use logical::{logical_chain, LogicalChain};
pub use observables::{
    cursor_distribution, expectation_counter, expectation_cursor, prob_completed_target,
    prob_register_target,
};
pub use propagate::{evolve_state, Evolver, Method, Trajectory, DENSE_LIMIT};
pub use sector::{SectorBasis, SectorState};
