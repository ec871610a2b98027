use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("bad reduction modulo {prime}: {detail}")]
    BadReduction { prime: u64, detail: String },

    #[error("enumeration budget exceeded: {needed} points requested, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("invalid jumping pair: {0}")]
    InvalidJumpingPair(String),

    #[error("multiplication map is not injective on a {dim}-dimensional section subspace")]
    InjectivityViolation { dim: usize, witness: Vec<Vec<String>> },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error: {0}")]
    Parse(String),
}
