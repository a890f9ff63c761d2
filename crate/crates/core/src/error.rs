use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has a nonzero constant term; exp needs a composable argument")]
    NonZeroConstantTerm,
    #[error("series constant term is zero or not a constant; it has no reciprocal")]
    ZeroConstantTerm,
    #[error("coefficient index {index} is beyond the series order {order}")]
    IndexBeyondOrder { index: usize, order: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("normalization mismatch: {0}")]
    NormalizationMismatch(String),
    #[error("degenerate family `{0}`: A_0 = 0, so beta_0 = 1/A_0 is undefined")]
    DegenerateFamily(String),
    #[error("matrix is not upper Hessenberg: {0}")]
    ShapeViolation(String),
    #[error("dimension {dim} exceeds the cofactor-expansion limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("unsupported case {0}")]
    UnsupportedCase(String),
    #[error("index constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
