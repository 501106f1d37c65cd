use thiserror::Error;

use crate::diagrams::Diagram;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("complex order N must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("{inner} is not strongly included in {outer}")]
    NotStronglyIncluded { outer: Diagram, inner: Diagram },

    #[error("the empty diagram has no standard tableaux")]
    EmptyDiagram,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("slot {slot} outside 1..={max}")]
    SlotOutOfRange { slot: usize, max: usize },

    #[error("index {index} outside 0..{dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no preimage exists: {0}")]
    NoPreimage(String),

    #[error("no single proportionality constant: {0}")]
    Inconsistent(String),

    #[error("malformed input at {location}: {message}")]
    Malformed { location: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn malformed(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Malformed { location: location.into(), message: message.into() }
    }
}
