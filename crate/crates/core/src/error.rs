use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants split into two families: user-facing domain problems
/// (bad level, unsupported character, precision out of range) and
/// internal invariant violations that indicate a bug upstream.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("computation cap exceeded: {0}")]
    CapExceeded(String),
    #[error("dependency missing: {0}")]
    Dependency(String),
    #[error("could not separate Hecke eigenspaces: {0}")]
    Separation(String),
    #[error("comparison inside guard band: {0}")]
    GuardBand(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than a bug.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Unsupported(_)
                | Error::CapExceeded(_)
                | Error::Dependency(_)
                | Error::Cache(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! internal {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}
pub(crate) use domain;
pub(crate) use internal;
