use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid semigroup element {element} for system {system}")]
    InvalidSemigroupElement { element: i64, system: String },
    #[error("invalid system descriptor `{0}` (expected q2, qp:<base> or qn)")]
    InvalidSystem(String),
    #[error("system mismatch: {left} vs {right}")]
    SystemMismatch { left: String, right: String },
    #[error("degree {degree} does not lie in the group {group}")]
    DegreeOutsideGroup { degree: String, group: String },
    #[error("H-element {0} does not belong to the group kind of this sequence")]
    ElementOutsideGroup(String),
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("duplicate sample entry {0}")]
    DuplicateSample(String),
    #[error("sample must not be empty")]
    EmptySample,
    #[error("explicit Følner sequence has {len} sets, index {index} requested")]
    SequenceTooShort { index: usize, len: usize },
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
}
