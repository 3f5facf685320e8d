use alloc::string::String;

/// Errors raised by the machine compilers, the dynamics kernels and the
/// sector evolution.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("register width mu = {0} outside the supported range 1..={max}", max = crate::spinops::MAX_MU)]
    InvalidWidth(usize),

    #[error("target word entry {value} at position {position} is not +1 or -1")]
    InvalidWord { position: usize, value: i64 },

    #[error("state has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} = {value} outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed cursor graph: {0}")]
    MalformedGraph(String),

    #[error("not a computation graph at step {step} (site {site}): {reason}")]
    NotAComputation {
        step: usize,
        site: usize,
        reason: String,
    },

    #[error("unknown edge label `{0}`")]
    UnknownLabel(String),

    #[error("label `{label}` is not unitary (residual {residual:e})")]
    NonUnitaryLabel { label: String, residual: f64 },

    #[error("propagator did not converge: requested tolerance {requested:e}, achieved {achieved:e}")]
    NoConvergence { requested: f64, achieved: f64 },

    #[error("root of {0} not bracketed by the search interval")]
    RootNotBracketed(&'static str),

    #[error("special function argument out of range: order {order}, argument {x}")]
    BesselDomain { order: u32, x: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
