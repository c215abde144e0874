use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence must have at least one entry")]
    Empty,

    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("weight must start at 1.0, found {found}")]
    WeightNotNormalized { found: f64 },

    #[error("weight entry {index} is not strictly positive ({value})")]
    WeightNotPositive { index: usize, value: f64 },

    #[error("weight increases at index {index}: {previous} < {value}")]
    WeightNotMonotone {
        index: usize,
        previous: f64,
        value: f64,
    },

    #[error("dimension mismatch: vector has length {got}, space supports at most {max}")]
    DimensionMismatch { got: usize, max: usize },

    #[error("dimension {got} exceeds the limit {max} for this operation")]
    DimensionTooLarge { got: usize, max: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("{path}: line {line}: {message}")]
    FileFormat {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
