use thiserror::Error;

/// Every failure the library can report.
///
/// The variants map onto the documented error conditions of the individual
/// operations; the CLI turns all of them into exit code 2 except
/// [`Error::EnumerationCapExceeded`] and [`Error::SearchExhausted`], which are
/// inconclusive outcomes (exit code 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime in this ring")]
    NotPrime(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("quadratic form is degenerate (zero discriminant)")]
    Degenerate,
    #[error("operation requires ring {expected}, form is over {got}")]
    WrongRing { expected: &'static str, got: String },
    #[error("all coefficients must be constants")]
    NonConstantCoefficients,
    #[error("form belongs to no implemented Euclidean family")]
    NotImplementedFamily,
    #[error("Euclidean step failed: {0}")]
    StepFailed(String),
    #[error("coefficient must be a positive integer")]
    NonPositiveCoefficient,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("search bound must be at least 1")]
    BoundTooSmall,
    #[error("not a split form: {0}")]
    NotSplitForm(String),
    #[error("anisotropic part takes an integral value off the lattice")]
    AnisotropicPartViolation,
    #[error("input vector is already integral")]
    AlreadyIntegral,
    #[error("descent step precondition violated: {0}")]
    BadStep(String),
    #[error("descent needs a form in an implemented Euclidean family")]
    NotEuclideanFamily,
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("representation question is not decidable for this form")]
    NotDecidable,
    #[error("form is not diagonal")]
    NotDiagonal,
    #[error("target must be nonzero")]
    ZeroTarget,
    #[error("form has dimension {got}, need at least {min}")]
    WrongDimension { min: usize, got: usize },
    #[error("p = 2 is a dyadic place")]
    DyadicPlace,
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration cap of {0} candidates exceeded")]
    EnumerationCapExceeded(u64),
    #[error("no witness found with t bound {0}")]
    SearchExhausted(u64),
    #[error("value does not fit the fixed-width enumeration arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
