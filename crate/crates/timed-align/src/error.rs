use thiserror::Error;

/// Errors raised by the library.
///
/// Index and contract errors signal misuse (a caller broke a documented
/// precondition); data errors come from parsing external input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A move targets a position outside `1..=len`.
    #[error("move position {position} is out of range for a trace of length {len}")]
    Index { position: usize, len: usize },

    /// Two traces (or a trace and a model) that must have equal length do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A documented precondition does not hold.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Malformed external data (model files, interval bounds).
    #[error("{context}: {message}")]
    Data { context: String, message: String },

    /// The labels of an observed trace diverge from the model.
    #[error("untimed mismatch at position {position}: expected {expected}, found {found}")]
    UntimedMismatch { position: usize, expected: String, found: String },

    /// Brute-force verifiers only accept small instances.
    #[error("instance of length {n} exceeds the oracle limit of {max}")]
    Capacity { n: usize, max: usize },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn data(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Data { context: context.into(), message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
