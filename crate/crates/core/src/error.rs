use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extended gcd of (0, 0) is undefined")]
    ZeroGcd,
    #[error("the zero vector has no primitive representative")]
    ZeroVector,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix has rank {found}, expected {expected}")]
    Rank { expected: &'static str, found: usize },
    #[error("matrix has a negative entry at ({row}, {col})")]
    Negative { row: usize, col: usize },
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("column {0} has non-integral coordinates in the lattice basis")]
    NonIntegralCoordinates(usize),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("coordinate {value} exceeds the brute-force cap of {cap}")]
    OracleCap { value: String, cap: i64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
