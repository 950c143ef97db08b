use thiserror::Error;

/// Errors produced by the library.
///
/// Structural problems with input data (`Schema`) are kept apart from
/// failed law checks, which are reported as data rather than errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("truncation too small: need degree {needed}, have {available}")]
    TruncationTooSmall { needed: usize, available: usize },

    #[error("map {0:?} is not weakly monotone")]
    NotMonotone(Vec<usize>),

    #[error("set {0:?} is not a divisor-closed set of positive integers")]
    NotDivisorClosed(Vec<u64>),

    #[error("{0:?} is not a divisor-closed subset of the truncation set")]
    NotASubset(Vec<u64>),

    #[error("series has a nonzero coordinate at {exponent}, outside the truncation set")]
    ResidualCoefficient { exponent: u64 },

    #[error("series must have constant term 1")]
    NotUnitSeries,

    #[error("series precision {have} is below the required {need}")]
    InsufficientPrecision { have: usize, need: usize },

    #[error("matrix is not invertible over {0}")]
    NotInvertible(String),

    #[error("homology in degree {degree} is not available below truncation {truncation}")]
    HomologyDegree { degree: usize, truncation: usize },

    #[error("boundary maps do not compose to zero at degree {degree}")]
    BoundaryNotNilpotent { degree: usize },

    #[error("functor laws fail: {0}")]
    FunctorLaw(String),

    #[error("operands live in different rings or truncation sets")]
    Mismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
