use thiserror::Error;

/// Errors raised by the library. Every variant maps to the CLI's input-error
/// exit code; verdict and axiom failures are values, not errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} has size {size}, above the exhaustive cap of {cap}")]
    CapExceeded { what: String, size: usize, cap: usize },

    #[error("fixture operator `{name}` is not defined on {subset}")]
    OutsideFixtureDomain { name: String, subset: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
