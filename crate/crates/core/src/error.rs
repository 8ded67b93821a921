use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("coefficient kind: {0}")]
    CoefficientKind(String),
    #[error("no cached Gröbner basis for the requested monomial order")]
    MissingBasis,
    #[error("input is not homogeneous: {0}; homogenize the presentation (weighted gradings are allowed)")]
    NotHomogeneous(String),
    #[error("resolution did not terminate within {0} steps")]
    ResolutionTooLong(usize),
    #[error("index {index} outside the complex range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("pair is not admissible: {0}")]
    Inadmissible(String),
    #[error("zero module has no intersection multiplicity")]
    ZeroModule,
    #[error("not an idempotent: e*e != e")]
    NotIdempotent,
    #[error("twist class must satisfy tau(L) = -L: {0}")]
    TwistNotOdd(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not quasi-homogeneous: {0}")]
    NotQuasiHomogeneous(String),
    #[error("singularity is not isolated (Jacobian ideal is positive dimensional)")]
    NonIsolated,
    #[error("degree error: {0}")]
    Degree(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("computation cancelled")]
    Cancelled,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
