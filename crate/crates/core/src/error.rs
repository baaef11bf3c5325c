use thiserror::Error;

/// Errors surfaced by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CpswfError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("blade mask {mask:#b} is not contained in {{1,..,{dim}}}")]
    BladeOutOfRange { mask: u64, dim: usize },

    #[error("grade {grade} out of range for dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field evaluation is only supported for m = 2 (got m = {0})")]
    UnsupportedDimension(usize),

    #[error("radius {0} lies outside [0, 1]; use the band-limited extension instead")]
    Extrapolation(f64),

    #[error("index {index} outside the computed spectrum of length {len}")]
    IndexOutOfSpectrum { index: usize, len: usize },

    #[error("eigensolver failure: {0}")]
    Eigensolver(String),

    #[error("quadrature under-resolved: {what} changed by {drift:.3e} under refinement (tolerance {tol:.1e})")]
    UnderResolved { what: String, drift: f64, tol: f64 },

    #[error("bound violated at index {index}: {detail} (margin {margin:.3e})")]
    BoundViolated { index: usize, detail: String, margin: f64 },

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for CpswfError {
    fn from(e: std::io::Error) -> Self {
        CpswfError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CpswfError {
    fn from(e: serde_json::Error) -> Self {
        CpswfError::Serialization(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CpswfError>;
