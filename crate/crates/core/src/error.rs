use thiserror::Error;

/// Errors raised across the construction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Two computations that must agree did not.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    /// An operation was called on an object in the wrong state.
    #[error("state error: {0}")]
    State(String),
    /// A frozen constant failed its validation.
    #[error("configuration error: {0}")]
    Config(String),
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A configured limit was reached before the computation finished.
    #[error("limit exceeded: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn inconsistency<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Inconsistency(msg.into()))
}
