use num_complex::Complex64;
use thiserror::Error;

/// Errors produced anywhere in the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("series has zero constant term")]
    ZeroConstantTerm,

    #[error("inner series must vanish at the origin, constant term is {0}")]
    NonzeroConstantTerm(Complex64),

    #[error("expected a univariate series, got dimension {0}")]
    NotUnivariate(usize),

    #[error("constant term {value} lies on the branch cut (-inf, 0]")]
    BranchCut { value: Complex64 },

    #[error("iterated logarithm left the principal branch at level {level}: 1 + F(0) = {value}")]
    LadderBranch { level: usize, value: Complex64 },

    #[error("series is not homogeneous: found degrees {0} and {1}")]
    NotHomogeneous(u32, u32),

    #[error("direction has norm {0}, expected a unit vector")]
    NonUnitDirection(f64),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("declared degree {declared} is below the total degree {actual}")]
    DegreeTooSmall { declared: u32, actual: u32 },

    #[error("zero found at {witness:?}: polynomial is not stable")]
    NotStable { witness: Vec<Complex64> },

    #[error("|lambda| = {0} is inside the unit disk")]
    InsideDisk(f64),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("moment index {index} is beyond the supplied table of {len} values")]
    MomentOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
