use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree {degree} out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("dimension {0} outside supported range 1..=12")]
    UnsupportedDimension(usize),
    #[error("expected a {expected_degree}-form on a {expected_dim}-dimensional space, got degree {degree} in dimension {dim}")]
    WrongShape { expected_dim: usize, expected_degree: usize, dim: usize, degree: usize },
    #[error("invalid index tuple {0:?}")]
    InvalidIndices(Vec<usize>),
    #[error("duplicate index tuple {0:?}")]
    DuplicateIndices(Vec<usize>),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("inner product is not ad-invariant")]
    NotAdInvariant,
    #[error("structure constants violate the Jacobi identity")]
    JacobiFailure,
    #[error("not a unit element: {0}")]
    NotUnit(String),
    #[error("matrix is not in SU(3): {0}")]
    NotSpecialUnitary(String),
    #[error("point is not on the level set Im g11 = 0")]
    NotOnLevelSet,
    #[error("defining functional vanishes identically at this point")]
    SingularPoint,
    #[error("value is not representable exactly: {0}")]
    Exactness(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("classifier cross-check failed: {0}")]
    Inconsistent(String),
}
