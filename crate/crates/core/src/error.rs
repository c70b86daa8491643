use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of an operation (index out of
    /// range, nonexistent tree node, empty ground set).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid run configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Malformed dataset input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Instance too large for exhaustive enumeration.
    #[error("instance too large: {0}")]
    GuardRail(String),

    /// A node produced or received something that violates an invariant.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
