use thiserror::Error;

/// Errors raised by the optimizer, the objectives and the closed-form theory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid search domain: {0}")]
    InvalidDomain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point outside the domain of `{objective}` at coordinate {index} (value {value})")]
    OutOfDomain {
        objective: String,
        index: usize,
        value: f64,
    },

    #[error("objective `{objective}` returned a non-finite value")]
    NonFiniteObjective { objective: String },

    #[error("unknown objective `{0}`")]
    UnknownObjective(String),

    #[error("objective `{name}` is only defined for d = {supported}, requested d = {requested}")]
    UnsupportedDimension {
        name: String,
        supported: usize,
        requested: usize,
    },

    #[error("outside the validity region of `{formula}`: {reason}")]
    TheoryDomain {
        formula: &'static str,
        reason: String,
    },

    #[error("trial {index} failed: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
