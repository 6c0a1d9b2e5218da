use thiserror::Error;

use crate::expr::ParseError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("incompatible spin: expected dimension {expected}, found {found}")]
    IncompatibleSpin { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("grid exact to degree {actual}, but degree {required} is required")]
    InsufficientGrid { required: usize, actual: usize },

    #[error("unsupported symbol conversion {from} -> {to}")]
    UnsupportedConversion { from: String, to: String },

    #[error("symbol kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: String, found: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid state spec: {0}")]
    State(String),

    #[error("need ≥{needed} points for a slope fit, got {got}")]
    TooFewPoints { needed: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
