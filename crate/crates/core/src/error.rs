use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps these onto exit codes through [`Error::kind`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    EmptySegment(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance limit exceeded: {0}")]
    Limit(String),

    #[error("disconnected graph: {0}")]
    Disconnected(String),

    #[error("invariant violation: {0}")]
    Invariant(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input is well formed but outside the operation's domain.
    Domain,
    /// The input could not be parsed or validated.
    Usage,
    /// An internal consistency check failed.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidAlphabet(_) | Error::UnknownLetter(_) | Error::Parse(_) => {
                ErrorKind::Usage
            }
            Error::EmptySegment(_)
            | Error::Precondition(_)
            | Error::Limit(_)
            | Error::Disconnected(_) => ErrorKind::Domain,
            Error::Invariant(_) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
