use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {got} is out of range for {family}: the minimum is {min}")]
    RankOutOfRange {
        family: &'static str,
        min: usize,
        got: usize,
    },
    #[error("node index {index} out of range 0..={max}")]
    NodeIndex { index: usize, max: usize },
    #[error("expected {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("weight {weight} has level {got}, expected {expected}")]
    WrongLevel { weight: String, expected: i64, got: i64 },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("column is not reduced")]
    NotReduced,
    #[error("slice {0:?} does not fit the stacking pattern")]
    BadSlice(Vec<usize>),
    #[error("node limit of {0} vertices exceeded")]
    NodeLimit(usize),
    #[error("tensor path with {0} factors is too short for this element")]
    PathOverflow(usize),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("fixture schema violation at line {line}: {msg}")]
    Schema { line: usize, msg: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
