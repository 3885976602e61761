use thiserror::Error;

/// Errors raised by the geometry kernel and the analysis layers built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid tangent vector: {0}")]
    InvalidTangent(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tangent vector base does not match the evaluation point")]
    BaseMismatch,
    #[error("tangent vector norm {norm} reaches the cut locus (diameter bound {bound})")]
    CutLocusExceeded { norm: f64, bound: f64 },
    #[error("points are (nearly) antipodal: distance {distance} >= {bound}")]
    AntipodalPair { distance: f64, bound: f64 },
    #[error("finite-difference step {0} is below 1e-12")]
    StepTooSmall(f64),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("vector field has no analytic partial derivatives")]
    MissingPartials,
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("sub-level set looks empty: no member found in {attempts} attempts")]
    EmptySublevel { attempts: usize },
    #[error("affine probe direction must be nonzero")]
    ZeroProbe,
    #[error("unsupported dimension {0} (needs a 2-D space)")]
    UnsupportedDimension(usize),
}

pub type Result<T> = std::result::Result<T, GeoError>;
