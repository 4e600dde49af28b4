use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} requires {limit_name} <= {limit}, got {value}")]
    LimitExceeded {
        what: &'static str,
        limit_name: &'static str,
        limit: usize,
        value: usize,
    },

    #[error("set is focal (nabla = {nabla}, delta = {delta})")]
    Focal { nabla: f64, delta: f64 },

    #[error("loss model constant check failed: {0}")]
    ConstantCheck(String),

    #[error("config error at `{field}`: {message}")]
    Config { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
