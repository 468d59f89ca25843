use thiserror::Error;

/// Errors raised across the crate.
///
/// `CapExceeded` is usually surfaced as a flagged result rather than this
/// error; it appears here for the lower-level enumeration APIs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {what} (log-space value {log_value})")]
    Overflow { what: &'static str, log_value: f64 },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("weight index {index} is beyond the explicit list of length {len}")]
    Index { index: usize, len: usize },

    #[error("unsupported weight family: {0}")]
    UnsupportedFamily(String),

    #[error("unsupported information class: {0}")]
    UnsupportedClass(String),

    #[error("unsupported error criterion: {0}")]
    UnsupportedCriterion(String),

    #[error("enumeration cap of {cap} exceeded; {lower_bound} is a certified lower bound")]
    CapExceeded { cap: u64, lower_bound: u64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error at position {position}: {message}; expected {expected}")]
    Parse {
        position: usize,
        message: String,
        expected: &'static str,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
