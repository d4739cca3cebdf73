use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input value is outside the range an operation accepts.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The operation is undefined for this input (e.g. path loss of a blocked link).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty population: {0}")]
    EmptyPopulation(String),

    /// The brute-force search refuses instances above its configured limits.
    #[error("instance too large for exhaustive search: {what} = {actual} exceeds limit {limit} (use the blind allocator)")]
    InstanceSize {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn config(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } => 2,
            Error::InstanceSize { .. } => 4,
            _ => 3,
        }
    }
}
