use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed index token `{0}`")]
    MalformedToken(String),
    #[error("zero entry in index")]
    ZeroEntry,
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("box join needs positive ends, got a = {a}, b = {b}")]
    BoxJoinDomain { a: i64, b: i64 },
    #[error("circled product needs non-empty operands")]
    EmptyOperand,
    #[error("index {0} is not admissible")]
    NotAdmissible(String),
    #[error("word is not admissible: {0}")]
    WordNotAdmissible(String),
    #[error("letter argument {0} is outside the unit disc")]
    LetterOutOfRange(String),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("divergent parameters: {0}")]
    Divergent(String),
    #[error("tail bound {bound:e} exceeds tolerance after {terms} terms")]
    TailTooLarge { bound: f64, terms: usize },
    #[error("poset is not admissible: {0}")]
    PosetNotAdmissible(String),
    #[error("poset order has a cycle")]
    PosetCycle,
    #[error("poset format: {0}")]
    PosetFormat(String),
    #[error("more than {0} linear extensions")]
    TooManyExtensions(u64),
    #[error("missing table entry A[{0}][{1}]")]
    MissingEntry(usize, usize),
    #[error("diagonal entry A[{0}][{0}] must be 1")]
    BadDiagonal(usize),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("parameter `{0}`: {1}")]
    Param(String, String),
}

pub type Result<T> = std::result::Result<T, Error>;
