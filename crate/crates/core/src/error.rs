use thiserror::Error;

/// Everything that can go wrong while building fields, algebra objects,
/// codes, or while enumerating within a budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field order {0} exceeds the supported maximum of 256")]
    OrderTooLarge(u64),
    #[error("extension degree must be at least 1")]
    BadExtensionDegree,
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix shape {0}x{1} does not match {2} entries")]
    ShapeMismatch(usize, usize, usize),
    #[error("wedge degree {0}+{1} exceeds ambient dimension {2}")]
    DegreeOverflow(usize, usize, usize),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("input multivector is zero")]
    ZeroInput,
    #[error("operation undefined when degree equals the ambient dimension")]
    DegreeEqualsAmbient,
    #[error("subspace has dimension zero")]
    ZeroDimension,
    #[error("matrix rows are linearly dependent")]
    RankDeficient,
    #[error("dimension sequence must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("{0}")]
    OutOfRange(String),
    #[error("need 1 <= ell < m, got ell={0}, m={1}")]
    BadGrassmannian(usize, usize),
    #[error("expected a subspace of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("evaluation matrix rank {got} disagrees with the dimension formula value {expected}")]
    RankMismatch { expected: String, got: usize },
    #[error("evaluation column {0} is identically zero")]
    DegenerateColumn(usize),
    #[error("operation requires ell > 1")]
    EllTooSmall,
    #[error("{what} needs {needed} items but the budget allows {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
