use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid multiset specification: {0}")]
    InvalidSpec(String),
    #[error("the empty pattern is not accepted")]
    EmptyPattern,
    #[error("pattern {0} repeats a value; use the multiset counter for multiset patterns")]
    NotAPermutation(String),
    #[error("length {k} is outside 1..={len}")]
    LengthOutOfRange { k: usize, len: usize },
    #[error("word {word} is not an arrangement of the multiset {spec}")]
    SpecMismatch { word: String, spec: String },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("refused: {0}")]
    BudgetExceeded(String),
    #[error("{0} does not evaluate to an integer")]
    NotIntegral(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

impl Error {
    /// Budget refusals are distinguished from malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
