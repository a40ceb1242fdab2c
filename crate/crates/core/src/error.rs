use thiserror::Error;

use crate::fields::FieldId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("Hahn series can only be inverted when they are monomials")]
    HahnUnsupportedInverse,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldId, found: FieldId },

    #[error("negative valuation: the element is not in the valuation ring")]
    NegativeValuation,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a line: subspace has dimension {0}")]
    NotALine(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("codomain mismatch")]
    CodomainMismatch,

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("element is not contained in the target submodule: {0}")]
    NotContained(String),

    #[error("invalid inflator spec at {path}: {message}")]
    Spec { path: String, message: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("element is not in the fundamental ring: {0}")]
    NotInRing(String),

    #[error("degenerate probe: element equals probe value {0}")]
    DegenerateProbe(String),

    #[error("not a lattice: {message} (witness {witness:?})")]
    NotALattice {
        message: String,
        witness: (usize, usize),
    },

    #[error("lattice is not modular: witness {0:?}")]
    NotModular((usize, usize, usize)),

    #[error("element is not in the valuation ring: {0}")]
    NotInO(String),

    #[error("no witness found: {0}")]
    NoWitness(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
