use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Inputs whose shapes disagree (a caller bug rather than a data problem).
    #[error("dimension mismatch: {what} (expected {expected}, got {found})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    /// The request is well-formed but exceeds what this implementation can compute.
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("generator failed: {0}")]
    Generator(String),

    #[error("unknown optimizer `{0}`")]
    UnknownOptimizer(String),

    #[error("decoder failed: {0}")]
    Decoder(String),

    #[error("missing oracle for instance {0}")]
    MissingOracle(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                what,
                expected,
                found,
            })
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
