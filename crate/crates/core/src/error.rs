use thiserror::Error;

/// Errors raised by the library. The variants map onto the CLI's exit
/// classes: everything except [`Error::Solver`] and [`Error::Internal`] is
/// a problem with the caller's input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by the input rather than by the library.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::Precondition(_) | Error::Resource(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
