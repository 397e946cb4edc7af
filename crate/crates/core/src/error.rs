use thiserror::Error;

/// Errors raised by the numeric routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum KerrError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("coefficient system residual {residual:.3e} exceeds {tolerance:.1e} for fraction {fraction}")]
    InternalConsistency {
        fraction: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("invalid grid window: {0}")]
    InvalidWindow(String),
}

pub type Result<T> = std::result::Result<T, KerrError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(KerrError::Domain(msg.into()))
}
