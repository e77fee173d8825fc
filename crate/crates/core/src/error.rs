use thiserror::Error;

/// Failures raised by the library. The `Display` strings are the stable
/// identifiers used in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not-prime: {0}")]
    NotPrime(u64),
    #[error("zero-polynomial")]
    ZeroPolynomial,
    #[error("no-embedding")]
    NoEmbedding,
    #[error("zero-base")]
    ZeroBase,
    #[error("not-solvable")]
    NotSolvable,
    #[error("zero-element")]
    ZeroElement,
    #[error("cubic-reducible")]
    CubicReducible,
    #[error("not-homogeneous")]
    NotHomogeneous,
    #[error("zero-poly")]
    ZeroPoly,
    #[error("field-mismatch")]
    FieldMismatch,
    #[error("enumeration-budget: {0} points exceeds the limit")]
    EnumerationBudget(u128),
    #[error("degenerate-system")]
    DegenerateSystem,
    #[error("extension-budget: factor of degree {degree} exceeds {max_ext}")]
    ExtensionBudget { degree: usize, max_ext: usize },
    #[error("not-incident")]
    NotIncident,
    #[error("line-component")]
    LineComponent,
    #[error("singular-center")]
    SingularCenter,
    #[error("not-a-function")]
    NotAFunction,
    #[error("precision-cap")]
    PrecisionCap,
    #[error("diagonalization-failed: {0}")]
    DiagonalizationFailed(String),
    #[error("divisor-mismatch: {0}")]
    DivisorMismatch(String),
    #[error("n-range")]
    NRange,
    #[error("not-an-automorphism")]
    NotAnAutomorphism,
    #[error("not-a-prime-power: {0}")]
    NotPrimePower(u64),
    #[error("field-too-large")]
    FieldTooLarge,
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
