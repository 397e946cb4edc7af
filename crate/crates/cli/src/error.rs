use std::io;

use kerrcat_core::KerrError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Core(#[from] KerrError),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("{0} verification check(s) failed")]
    VerificationFailed(usize),
}

impl CliError {
    /// Process exit status: 1 usage, 2 verification failure, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) | CliError::Parse(_) => 1,
            CliError::VerificationFailed(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
