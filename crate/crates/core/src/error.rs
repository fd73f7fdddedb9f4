use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller supplied parameters outside an operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The persistent constant cache could not be read or is inconsistent.
    #[error("cache error: {0}")]
    Cache(String),

    /// An internal invariant failed (block shapes, degrees, bound ordering).
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
