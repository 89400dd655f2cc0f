use thiserror::Error;

/// Errors raised across the crate.
///
/// Variants map one-to-one onto the failure classes of the public operations;
/// `Internal` means a computed identity failed to hold and should be treated
/// as a bug report rather than bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("exact division failed: {0}")]
    Divisibility(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed L-polynomial: {0}")]
    MalformedL(String),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
