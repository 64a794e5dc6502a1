use thiserror::Error;

/// Errors raised by the evaluation kernels, set construction, the ladder
/// and the experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} requires {bound}, got {value}")]
    Domain {
        what: &'static str,
        bound: &'static str,
        value: f64,
    },

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("{method} did not converge after {iterations} iterations (last iterate {last})")]
    NonConvergence {
        method: &'static str,
        iterations: usize,
        last: f64,
    },

    #[error("quadrature did not converge after {escalations} escalations; worst panel [{lo}, {hi}]")]
    Quadrature { escalations: usize, lo: f64, hi: f64 },

    #[error("invalid interval union: {0}")]
    InvalidUnion(String),

    #[error("distance is undefined for an empty set")]
    EmptySet,

    #[error("degenerate set: window parameter {0} is below resolution")]
    Degenerate(f64),

    #[error("argument {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("ladder extent {extent} exceeds the admissible T/ln T = {limit}")]
    Admissibility { extent: f64, limit: f64 },

    #[error("shift beta*ln(P0) = {0} exceeds pi")]
    ShiftRange(f64),

    #[error("integrand {0} needs a ladder table")]
    MissingLadder(&'static str),

    #[error("invalid parameter: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
