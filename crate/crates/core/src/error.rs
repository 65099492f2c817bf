use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure taxonomy shared by the library and the command-line front end.
///
/// The variants are grouped the way callers need to react to them:
/// `Parse` is bad input text, `CapExceeded` is a refused computation,
/// `Hypothesis`/`Precondition` mean the inputs violate a stated premise,
/// and `Verification` means an internally produced certificate failed its
/// own independent re-check (a bug, never a user error).
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for ground set of size {universe}")]
    IndexOutOfRange { index: usize, universe: usize },

    #[error("universe size mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("{what} needs {needed}, exceeding the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
