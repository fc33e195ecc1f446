use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty set")]
    EmptySet,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{value} is outside [0, {max}]")]
    OutOfRange { value: i64, max: i64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector is not in the set")]
    MissingZero,
    #[error("points generate a proper sublattice (elementary divisors {divisors:?})")]
    ProperSublattice { divisors: Vec<BigInt> },
    #[error("hull not full-dimensional")]
    NotFullDimensional,
    #[error("unbounded search: cone not pointed")]
    NotPointed,
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A certificate predicted by the structure theory failed to validate.
    #[error("structure violation: {0}")]
    StructureViolation(String),
    /// A proven bound was exceeded. Either a bug or a counterexample.
    #[error("counterexample: {0}")]
    Counterexample(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    /// True for errors that indicate a falsified mathematical statement.
    pub fn is_counterexample(&self) -> bool {
        matches!(
            self,
            Error::StructureViolation(_) | Error::Counterexample(_)
        )
    }
}
