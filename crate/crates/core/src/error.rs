use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("singular system (|det| = {det:e})")]
    Singular { det: f64 },

    #[error("no cycle detected after {returns} section returns")]
    NoCycleFound { returns: usize },

    #[error("trajectory left the state domain at t = {t}")]
    DomainExit { t: f64 },

    #[error("no bifurcating cycle on this side of the critical value: {0}")]
    SideMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
