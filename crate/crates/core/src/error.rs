//! Crate-wide error type.
//!
//! Four coarse categories are enough for every fallible operation here:
//! bad caller input, inputs too large for an algorithm's hard limit, data
//! sets too small/degenerate to act on, and malformed serialized data.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The caller passed a value outside an operation's documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Input exceeds a hard size limit of an exponential/factorial
    /// algorithm. The message names the limit so callers can route
    /// oversized instances to the heuristic instead.
    #[error("capacity exceeded: {what} supports at most {limit}, got {got}")]
    CapacityExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// A data-driven operation (model fit, classifier split, ...) was
    /// given fewer or less varied samples than it needs.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Malformed serialized input. `line` is 1-based where applicable
    /// (0 when the input has no meaningful line structure).
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
