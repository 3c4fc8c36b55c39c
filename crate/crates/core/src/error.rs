use thiserror::Error;

/// Errors raised by context construction and by the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table of monoid {monoid} is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative {
        monoid: String,
        x: String,
        y: String,
        z: String,
    },
    #[error("identity violation in monoid {monoid}: {detail}")]
    IdentityViolation { monoid: String, detail: String },
    #[error("trivial vertex monoid {0}")]
    TrivialMonoid(String),
    #[error("malformed table in monoid {monoid}: {detail}")]
    MalformedTable { monoid: String, detail: String },
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("invalid symbol {0:?}")]
    InvalidSymbol(String),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("edge ({0},{1}) references a vertex outside 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("arity mismatch: {vertices} vertices but {monoids} monoids")]
    ArityMismatch { vertices: usize, monoids: usize },
    #[error("invalid letter: {0}")]
    InvalidLetter(String),
    #[error("length mismatch: word has {word} letters, permutation has {perm} entries")]
    LengthMismatch { word: usize, perm: usize },
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("({0},{1}) is not an edge")]
    MissingCrossEdge(String, String),
    #[error("graph is not relatively complete: {0}")]
    NotRelativelyComplete(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
