use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("word {word} has weight {weight}, expected {expected}")]
    WeightMismatch {
        word: String,
        weight: String,
        expected: String,
    },

    #[error("subspace is not stable under the module action")]
    NotStable,

    #[error("shuffle operands live over different quivers")]
    QuiverMismatch,

    #[error("{0} is not a usable prime")]
    NotPrime(u64),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("not polynomial-count or non-generic point: {0}")]
    Interpolation(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error(
        "quiver has multiple edges between {0} and {1}; pass the multi-edge override to proceed"
    )]
    MultiEdge(String, String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
