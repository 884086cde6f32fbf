use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("points lie on different curves (d = {0} and d = {1})")]
    CurveMismatch(i8, i8),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration exponent {k} exceeds the ceiling {max}")]
    EnumerationTooLarge { k: u32, max: u32 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
