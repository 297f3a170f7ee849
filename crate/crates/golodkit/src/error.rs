use thiserror::Error;

/// Errors produced by parsing, validation, and resource guards.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("ideal has no generators after minimalization")]
    EmptyIdeal,

    #[error("generator {0} is a unit; the quotient ring would be zero")]
    UnitGenerator(String),

    #[error("{found} generators exceed the cap of {cap} (set GOLODKIT_MAX_GENERATORS to raise it)")]
    TooManyGenerators { found: usize, cap: usize },

    #[error("characteristic {0} is not prime")]
    NotPrime(u32),

    #[error("expected a squarefree monomial, found {0}")]
    NotSquarefree(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidSimplicialComplex(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed json")]
    Json(#[from] serde_json::Error),

    #[error("i/o failure")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
