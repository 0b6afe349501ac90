use thiserror::Error;

/// Failures surfaced by the library. Callers that probe (e.g. square roots)
/// get `Option`s instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("search bound exhausted: {0}")]
    Bound(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
