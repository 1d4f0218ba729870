use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An adaptive computation could not resolve at the configured precision cap.
    #[error("precision exhausted at {bits} bits: {what}")]
    Precision { bits: u32, what: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("division by zero")]
    DivisionByZero,

    /// A square-root certificate could be neither built nor refuted within the configured caps.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// An exact identity or certificate check failed. Always a bug or a counterexample.
    #[error("integrity failure: {0}")]
    Integrity(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precision { .. } | Error::Inconclusive(_) => 3,
            Error::Precondition(_) => 2,
            Error::DivisionByZero | Error::Integrity(_) => 1,
        }
    }
}
