use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("{a} has no inverse modulo {m}")]
    NoInverse { a: i64, m: i64 },
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("quotient is infinite: sublattice has rank {rank} in ambient rank {ambient}")]
    InfiniteQuotient { rank: usize, ambient: usize },
    #[error("point has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point {0} is not in the monoid")]
    NotInMonoid(String),
    #[error("point {0} is not in the Apery set")]
    NotInApery(String),
    #[error("box volume {volume} exceeds guard {guard}")]
    BoxTooLarge { volume: u128, guard: u128 },
    #[error("closed form needs exactly two variables, got {0}")]
    NotTwoDimensional(usize),
    #[error("closed form needs nonzero reduced coefficients")]
    ZeroCoefficient,
    #[error("Hilbert basis has {0} non-ray elements; at most 2 are supported")]
    TooManyExtras(usize),
    #[error("no admissible parameters reproduce Apery element {0}")]
    SchemeInconsistent(String),
    #[error("element does not conform to carry monoid: {0}")]
    SpecMismatch(String),
    #[error("table is not an abelian group: {axiom} fails at {witness}")]
    NotAGroup { axiom: &'static str, witness: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadInput(_) => "BadInput",
            Error::NoInverse { .. } => "NoInverse",
            Error::Overflow(_) => "Overflow",
            Error::InfiniteQuotient { .. } => "InfiniteQuotient",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotInMonoid(_) => "NotInMonoid",
            Error::NotInApery(_) => "NotInApery",
            Error::BoxTooLarge { .. } => "BoxTooLarge",
            Error::NotTwoDimensional(_) => "NotTwoDimensional",
            Error::ZeroCoefficient => "ZeroCoefficient",
            Error::TooManyExtras(_) => "TooManyExtras",
            Error::SchemeInconsistent(_) => "SchemeInconsistent",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::NotAGroup { .. } => "NotAGroup",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
