//! Cursor graphs for the Grover machine families and their logical paths.
//!
//! A [`CursorGraph`] lists the forward Hamiltonian terms of a machine: an
//! edge `(i → f, label)` stands for `Op_label ⊗ τ_+(f) τ_-(i)`. The full
//! Hamiltonian is the forward part plus its adjoint.

mod graph;
mod machines;
pub(crate) mod schedule;
mod successors;

pub use graph::{Axis, CursorGraph, Edge, EdgeLabel, SwitchVariant};
pub use machines::{
    build_cnot_network, build_full_machine, build_linear_chain, build_subroutine_machine,
    cnot_path_length, cnot_sites, full_machine_path_length, full_machine_sites, subroutine_sites,
    MAX_COUNTER_BITS,
};
pub(crate) use machines::check_counter;
pub use schedule::{
    oracle_call_indices, path_length, steps_approx, steps_exact, two_adic_valuation,
};
pub use successors::{
    enumerate_grover_path, enumerate_successors, Letter, LogicalPath, OpWord, PathEntry, QubitBasis,
    RegisterLabel, StartLabel,
};
