use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("work budget exhausted in {what} ({progress})")]
    Budget { what: &'static str, progress: String },

    #[error("basis is not flagged as a reduced Groebner basis")]
    NotGroebner,

    #[error("operation requires a finite field")]
    InfiniteField,

    #[error("finite field rejected: {0}")]
    FiniteField(String),

    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("maps do not chain: {0}")]
    ChainMismatch(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("sublattice is rank deficient (rank {rank} in dimension {dim})")]
    RankDeficient { rank: usize, dim: usize },

    #[error("memory set is not contained in the sublattice: {0}")]
    NotInSublattice(String),
}

impl Error {
    pub fn budget(what: &'static str, progress: impl Into<String>) -> Self {
        Error::Budget {
            what,
            progress: progress.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
