//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a documented precondition (hypothesis of an
    /// identity, empty index where a nonempty one is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A word lies outside the subalgebra an operation is defined on
    /// (e.g. regularization needs words not ending in `e0`-only tails).
    #[error("word {word} is not in {algebra}")]
    Algebra { word: String, algebra: &'static str },

    /// The request is out of the supported desk-scale range.
    #[error("capability: {0}")]
    Capability(String),

    /// A numeric result cannot be trusted at the requested precision.
    #[error("accuracy: {0}")]
    Accuracy(String),

    /// Bad command-line usage (maps to exit code 2).
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn accuracy(msg: impl Into<String>) -> Self {
        Error::Accuracy(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
