use thiserror::Error;

/// Errors raised by curvature computations and their inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown catalog function `{0}`")]
    UnknownFunction(String),

    #[error("parameter {name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("argument must be positive, got {0}")]
    NonPositiveArgument(f64),

    #[error("derivative order {order} exceeds maximum {max}")]
    OrderTooHigh { order: usize, max: usize },

    #[error("{what} = {value} outside its domain {domain}")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("tangent vector is not traceless (trace {0})")]
    NotTraceless(f64),

    #[error("tangent vector is not self-adjoint (deviation {0})")]
    NotSelfAdjoint(f64),

    #[error("pair {0} is not ordered by majorization")]
    UnorderedPair(usize),

    #[error("limit evaluation failed: {0}")]
    Limit(String),

    #[error("moment and series classification disagree: moment route {moment:?}, series route {series:?}")]
    RouteDisagreement {
        moment: crate::extremum::Verdict,
        series: crate::extremum::Verdict,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(x))
    }
}
