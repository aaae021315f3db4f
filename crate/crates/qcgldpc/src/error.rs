use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{poly} is not invertible modulo x^{modulus}+1")]
    NotInvertible { poly: String, modulus: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a ring modulus but the matrix has none")]
    ModulusMissing,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generator incomplete: rank {rank} of target dimension {target}")]
    Incomplete { rank: usize, target: usize },
    #[error("exhaustive search needs 2^{log2_messages} messages, budget is {budget}")]
    BudgetExceeded { log2_messages: usize, budget: u64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
