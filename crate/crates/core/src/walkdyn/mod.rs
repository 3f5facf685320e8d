//! Walker dynamics on a single computational path.
//!
//! Everything here works on the reduced problem: a cursor hopping on an open
//! chain of `s` sites, with the register content fixed by the path index.

pub mod bessel;
mod chain;
mod packet;
mod peaks;
mod pr;

pub use bessel::{bessel_j, bessel_j_orders};
pub use chain::{chain_amplitude, ChainPropagator};
pub use packet::{bessel_packet, continuum_density, x_odd};
pub use peaks::{
    completion_peak, first_peak, locate_maximum, peak_zero, FirstPeak, PeakFlavor,
    SampledPeak,
};
pub use pr::{
    pr_closed_chain, pr_closed_subroutine, pr_exact_chain, pr_exact_subroutine, ExactPr,
    PrKind, PrSeries, TimeGrid, DEFAULT_STEP,
};
