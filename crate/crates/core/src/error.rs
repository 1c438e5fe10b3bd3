use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: ({0}, {1}) vs ({2}, {3})")]
    OrderMismatch(usize, usize, usize, usize),

    #[error("variable counts differ: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("series constant term must be 1 to invert")]
    NonUnitConstant,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("alpha must be nonzero")]
    ZeroAlpha,

    #[error("{needed} variables required for a faithful expansion, got {got}")]
    InsufficientVariables { needed: usize, got: usize },

    #[error("partition {partition} does not have weight {expected}")]
    WeightMismatch { partition: String, expected: usize },

    #[error("negative power of t remains after substitution (t^0 coefficient {0})")]
    NegativeTPower(String),

    #[error("basis `{0}` is not supported here")]
    UnsupportedBasis(char),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
