use thiserror::Error;

/// Errors raised by the exact matrix and LCP machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix data is not square: {0}")]
    NonSquare(String),
    #[error("malformed rational literal `{0}`")]
    MalformedRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed matrix document: {0}")]
    Malformed(String),
    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not bidiagonal southwest")]
    NotBdswShape,
    #[error("pivot block is singular")]
    SingularPivot,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid pivot set: {0}")]
    InvalidPivotSet(String),
    #[error("order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("vector d must be componentwise positive")]
    NotPositive,
    #[error("matrix is not an R0-matrix")]
    NotR0,
    #[error("no generic q found after {0} draws")]
    ResamplingExhausted(usize),
    #[error("matrix does not have the structure required by {0}")]
    WrongStructure(&'static str),
    #[error("cannot generate instance: {0}")]
    InfeasibleConstraints(String),
    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("invalid Jordan frame: {0}")]
    InvalidFrame(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("symmetric eigensolver did not converge")]
    EigenFailure,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
