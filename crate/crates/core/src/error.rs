use thiserror::Error;

/// Errors raised by the library. Mathematical "no" answers are never errors;
/// they are returned as ordinary values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}
