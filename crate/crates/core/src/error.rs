use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors are not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bad modulus parameter: {0}")]
    BadModulusParameter(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bad Schmidt vector: {0}")]
    BadSchmidtVector(String),
    #[error("Jacobi symbol and Gauss sums need an odd positive modulus, got {0}")]
    EvenModulus(i64),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("a*c + b must be even")]
    ParityViolation,
    #[error("a*c must be nonzero")]
    ZeroProduct,
    #[error("{0} is outside the supported range")]
    RangeExceeded(u64),
    #[error("invalid overlap summary: {0}")]
    InvalidOverlapSummary(String),
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),
    #[error("no counts recorded for basis '{0}'")]
    EmptyCounts(String),
    #[error("unknown basis label '{0}'")]
    UnknownBasisLabel(String),
    #[error("at least {needed} bases required, got {got}")]
    TooFewBases { needed: usize, got: usize },
    #[error("subset search is limited to {max} bases, got {got}")]
    TooManyBases { max: usize, got: usize },
    #[error("dimension {dim} exceeds the dense limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("noise ratio {p} is at or above the witnessable limit {limit}")]
    InfeasibleNoise { p: f64, limit: f64 },
    #[error("infeasible overlap box: {0}")]
    Infeasible(String),
    #[error("all matching-outcome probabilities vanish")]
    ZeroDiagonal,
    #[error("threshold is not bracketed: {0}")]
    NonBracketed(String),
}
