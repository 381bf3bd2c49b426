use std::io;
use std::path::PathBuf;

use ciq_core::CiqError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or configuration values. Maps to exit code 2.
    #[error("{0}")]
    Usage(String),

    #[error("CIQF format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Core(#[from] CiqError),

    #[error("could not serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub(crate) fn format(offset: usize, message: impl Into<String>) -> Self {
        CliError::Format { offset, message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
