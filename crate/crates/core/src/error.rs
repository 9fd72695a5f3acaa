use thiserror::Error;

/// Errors raised by the library. The CLI exits with 2 on `InvalidParameter`,
/// `Arity`, `Parse` and `UnknownBuiltin`, with 3 on `Capability`, and with 1
/// otherwise.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity error: {0}")]
    Arity(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("copy budget exhausted: requested {requested} more copies with {consumed}/{budget} consumed")]
    BudgetExhausted {
        requested: u64,
        consumed: u64,
        budget: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown builtin function `{0}`")]
    UnknownBuiltin(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
