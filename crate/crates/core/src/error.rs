use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("exact zero-test unsupported for radicals")]
    RadicalZeroTest,
    #[error("expression contains a radical where a rational function is required")]
    RadicalNotAllowed,
    #[error("unassigned symbol `{0}`")]
    Unassigned(String),
    #[error("division by a numerically zero subexpression")]
    NumericZeroDivision,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not Puiseux-normalizable: {0}")]
    NotPuiseux(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("constraint violated: {0} must be nonzero")]
    ConstraintViolated(String),
    #[error("not a cocycle")]
    NotCocycle,
    #[error("vector is not in the annihilator")]
    NotInAnnihilator,
    #[error("singular matrix")]
    Singular,
    #[error("not an automorphism")]
    NotAutomorphism,
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("tier mismatch: {0}")]
    TierMismatch(String),
    #[error("numeric overflow in {0}")]
    Overflow(&'static str),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
