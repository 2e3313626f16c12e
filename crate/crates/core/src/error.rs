use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported; q must be a power of an odd prime")]
    EvenCharacteristic,
    #[error("bad extension degree: {0}")]
    BadDegree(String),
    #[error("division by zero in the field")]
    DivideByZero,
    #[error("dimension {0} is too small for this operation")]
    DimensionTooSmall(usize),
    #[error("the first column must be nonzero")]
    ZeroFirstColumn,
    #[error("degenerate triangle: matrix has zero determinant")]
    DegenerateTriangle,
    #[error("cannot reflect in a vector of length zero")]
    IsotropicMirror,
    #[error("vectors have different lengths under the quadratic form")]
    LengthMismatch,
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("invariant triple is not realized by any invertible matrix")]
    UnrealizableInvariant,
    #[error("ambient space of size {size} exceeds the supported limit {limit}")]
    AmbientTooLarge { size: u64, limit: u64 },
    #[error("search exhausted without a witness: {0}")]
    SearchExhausted(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
