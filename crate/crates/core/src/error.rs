use thiserror::Error;

use crate::freemod::FreeComplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero polynomial has no degree")]
    DegreeOfZero,

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("objects live over different rings")]
    RingMismatch,

    #[error("entry ({row},{col}): degree {found}, expected {expected}")]
    Inhomogeneous {
        row: usize,
        col: usize,
        found: String,
        expected: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a complex at index {index}: entry ({row},{col}) of the composition is {witness}")]
    NotAComplex {
        index: usize,
        row: usize,
        col: usize,
        witness: String,
    },

    #[error("resolution did not terminate within {maxlen} steps")]
    PartialResolution { maxlen: usize, prefix: Box<FreeComplex> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code convention shared with the command-line front end:
    /// 2 for input errors, 3 for exhausted resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceLimit(_) => 3,
            _ => 2,
        }
    }
}
