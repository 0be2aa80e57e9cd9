use crate::expr::{EvalError, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}
