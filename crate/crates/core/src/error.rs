use thiserror::Error;

use crate::problems::ProblemId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),
    #[error("budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("no feasible solution exists")]
    NoSolution,
    #[error("instance generation failed: {0}")]
    GenerationFailed(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("element not in universe: {0}")]
    ElementNotInUniverse(String),
    #[error("no registered embedding for {0}")]
    NoEmbedding(String),
    #[error("not a solution: {0}")]
    NotASolution(String),
    #[error("no registered lifting for {0}")]
    NoLifting(String),
    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: ProblemId, found: ProblemId },
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("validation error at {path}: {msg}")]
    Validation { path: String, msg: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown reduction {0}")]
    UnknownReduction(String),
    #[error("unknown problem {0}")]
    UnknownProblem(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidInstance(msg.into())
    }

    pub fn validation(path: impl Into<String>, msg: impl Into<String>) -> Error {
        Error::Validation {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
