use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type {0}")]
    InvalidType(String),

    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{what} exceeds the enumeration budget (limit {limit})")]
    BudgetExceeded { what: String, limit: u64 },

    #[error("vertex {0} is not marked")]
    NotMarked(usize),

    #[error("marked diagram has {0} marks, expected exactly one")]
    NotSingle(usize),

    #[error("step (p = {p}, r = {r}) is inconsistent with the partition")]
    InconsistentStep { p: usize, r: usize },

    #[error("operation requires type A, got {0}")]
    NotTypeA(String),

    #[error("orderings lie in different first-kind classes; no flop path exists")]
    NoFlopPath,

    #[error("characteristic {0} is not supported for orthogonal types")]
    UnsupportedCharacteristic(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            limit,
        }
    }
}
