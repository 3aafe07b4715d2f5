use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum LiError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires a nonempty sample set")]
    EmptyData,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl LiError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        LiError::InvalidInput(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        LiError::Config(msg.into())
    }

    /// True for errors caused by a malformed configuration or input document
    /// rather than by a failure while running.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            LiError::Config(_)
                | LiError::InvalidInput(_)
                | LiError::DimensionMismatch { .. }
                | LiError::Json(_)
        )
    }
}

pub type Result<T, E = LiError> = std::result::Result<T, E>;
