//! Cursor-model quantum computers running Grover search.
//!
//! A register of `mu` input qubits plus one output qubit is driven by a
//! "cursor": a chain of spins carrying a single excitation whose position
//! acts as a quantum program counter. Each link of the cursor graph applies
//! an operator to the register (and to an optional subroutine counter) as
//! the excitation hops across it.
//!
//! The crate is split along the same lines as the problem:
//!
//! * [`spinops`]: the oracle `A`, the estimator `B` and the closed-form
//!   Grover iterates.
//! * [`pathspec`]: compilers from machine families (linear chain,
//!   subroutine machine, local c^μNOT networks, full local machine) to
//!   cursor graphs, and the symbolic logical-successor walk.
//! * [`walkdyn`]: closed-form amplitude dynamics along a computational
//!   path: spectral chain amplitudes, Bessel asymptotics, `Pr(t)` and its
//!   peak.
//! * [`evolve`]: exact evolution of a compiled machine in the
//!   one-excitation cursor sector, observables and conservation audits.
//!
//! # Basis conventions
//!
//! Qubit `i` (1-based) of the register maps to bit `i - 1` of a basis index,
//! and the spin value `+1` maps to bit value `0`. The output qubit `ν = μ + 1`
//! is therefore the most significant register bit. Counter spins follow the
//! same rule. Every module and every file format shares this convention.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled; all floating-point kernels go through `libm`, so results are
//! bit-identical with and without `std`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod evolve;
pub mod pathspec;
pub mod spinops;
pub mod walkdyn;

mod math;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Coupling rate giving an average cursor speed close to one site per unit
/// of time on long chains.
pub const DEFAULT_LAMBDA: f64 = 3.0 * core::f64::consts::PI / 8.0;
