use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A contract violation on an operation's inputs.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Malformed text in a point-set file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A witness or corpus entry failed independent re-verification.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
