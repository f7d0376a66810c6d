use thiserror::Error;

/// Errors raised by the geometry kernel, the matrix kernel and the region
/// constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SrgError {
    #[error("point has a negative or non-finite component: {re} + {im}i")]
    NotInUpperHalfPlane { re: f64, im: f64 },
    #[error("points coincide; the geodesic through them is undefined")]
    CoincidentPoints,
    #[error("disk is undefined for endpoints with equal real parts")]
    UndefinedDisk,
    #[error("the Klein point (1, 0) is the image of the point at infinity")]
    PointAtInfinity,
    #[error("Klein point ({u}, {v}) lies outside the closed unit disk")]
    OutsideKleinDisk { u: f64, v: f64 },
    #[error("arc parameter {0} is outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("empty point set")]
    EmptyInput,
    #[error("polygon has no interior ({0})")]
    DegeneratePolygon(&'static str),
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("zero vector has no z_A image")]
    ZeroVector,
    #[error("matrix is not square: {0} entries for n = {1}")]
    NotSquare(usize, usize),
    #[error("matrix entry {index} is not finite")]
    NonFiniteEntry { index: usize },
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("QR iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("spectrum is not closed under complex conjugation")]
    NotConjugateClosed,
    #[error("matrix is not normal: |A^T A - A A^T|_F = {defect:e}")]
    NotNormal { defect: f64 },
    #[error("matrix is not symmetric: |A - A^T|_F = {defect:e}")]
    NotSymmetric { defect: f64 },
    #[error("span vectors violate the orthogonality conditions (worst residual {residual:e})")]
    OrthogonalityViolated { residual: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = SrgError> = std::result::Result<T, E>;
