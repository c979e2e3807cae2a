use thiserror::Error;

/// Errors raised across the laboratory.
///
/// Variants are grouped by how a caller should react: [`Error::is_usage`]
/// errors come from bad input, [`Error::is_precondition`] errors from requests
/// that are well-formed but not satisfiable (zero rank, caps), and the
/// remainder signal a numerical or structural defect.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("enumeration cap exceeded: {size} elements requested, cap is {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("tensor dimension {dim} exceeds cap {cap}")]
    TensorCapExceeded { dim: usize, cap: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a representation: {0}")]
    NotARepresentation(String),

    #[error("rank of projector is not an integer (trace {trace})")]
    NonIntegerRank { trace: f64 },

    #[error("unobservable representation {label}: projector has rank 0")]
    ZeroRank { label: String },

    #[error("multiplicity is not an integer: {0}")]
    NonIntegerMultiplicity(String),

    #[error("imaginary part {imag:e} exceeds tolerance in {quantity}")]
    ComplexValue { quantity: String, imag: f64 },

    #[error("basis is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("outcome sets differ: {0}")]
    OutcomeMismatch(String),

    #[error("bound undefined: {0}")]
    UndefinedBound(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("cache I/O: {0}")]
    Cache(String),
}

impl Error {
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::GroupMismatch(_)
                | Error::InvalidElement(_)
                | Error::Unsupported(_)
                | Error::OutOfRange(_)
                | Error::Parse(_)
        )
    }

    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::TensorCapExceeded { .. }
                | Error::ZeroRank { .. }
                | Error::UndefinedBound(_)
                | Error::Cache(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
