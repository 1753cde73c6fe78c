use thiserror::Error;

/// Errors reported by the algebraic routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("map is not invertible: {0}")]
    NotInvertible(String),

    #[error("level violation: {0}")]
    LevelViolation(String),

    #[error("singular linear system at level {level}")]
    SingularLevel { level: i32 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("homomorphism violated on ({left}, {right})")]
    NotHomomorphism { left: String, right: String },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
