use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: Q(sqrt({0})) vs Q(sqrt({1}))")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivByZero,
    #[error("radicand {0} is not a positive non-square integer")]
    BadRadicand(u64),
    #[error("empty continued-fraction word")]
    EmptyWord,
    #[error("partial quotient {value} at index {index} is not allowed here")]
    BadDigit { index: usize, value: u32 },
    #[error("partial quotient {value} at index {index} lies outside 1..=4")]
    DigitRange { index: usize, value: u32 },
    #[error("malformed period: {0}")]
    MalformedPeriod(String),
    #[error("index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("word {word:?} is inadmissible (first violation at {at:?})")]
    Inadmissible { word: Vec<u32>, at: Option<usize> },
    #[error("requested depth {requested} exceeds the limit {limit}")]
    DepthLimit { requested: u32, limit: u32 },
    #[error("tail values are not strictly increasing (a < b < c < d)")]
    TailOrder,
    #[error("degenerate segment at depth {depth}, index {index}")]
    Degenerate { depth: u32, index: u64 },
    #[error("no refinement keeps the target inside the product (step {step})")]
    Stuck { step: usize },
    #[error("cut in block {block} lands on digit 4 at index {index}")]
    BadCut { block: usize, index: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
