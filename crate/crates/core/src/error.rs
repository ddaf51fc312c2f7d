use thiserror::Error;

use crate::scalar::Domain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("ambient dimension mismatch: expected {expected}, got {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the given space")]
    NotContained,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("operation requires a finite base field")]
    InfiniteDomain,
    #[error("operation requires a nonzero algebra")]
    ZeroAlgebra,
    #[error("input too large for brute-force enumeration: {0}")]
    TooLarge(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid bracket data: {0}")]
    InvalidBracket(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("identified subspace is not central: {0}")]
    IdentificationNotCentral(String),
    #[error("identification map is not invertible")]
    NotInvertible,
    #[error("algebra is not Frattinian")]
    NotFrattinian,
    #[error("algebra is abelian")]
    AbelianInput,
    #[error("internal assertion failed: {0}")]
    InternalAssertionFailed(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scalar literal {literal:?} for {domain}")]
    InvalidScalar { literal: String, domain: Domain },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainMismatch(..) => "DomainMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidDomain(_) => "InvalidDomain",
            Error::AmbientMismatch { .. } => "AmbientMismatch",
            Error::NotContained => "NotContained",
            Error::NotASubalgebra => "NotASubalgebra",
            Error::NotNilpotent => "NotNilpotent",
            Error::InfiniteDomain => "InfiniteDomain",
            Error::ZeroAlgebra => "ZeroAlgebra",
            Error::TooLarge(_) => "TooLarge",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::InvalidBracket(_) => "InvalidBracket",
            Error::JacobiViolation(..) => "JacobiViolation",
            Error::IdentificationNotCentral(_) => "IdentificationNotCentral",
            Error::NotInvertible => "NotInvertible",
            Error::NotFrattinian => "NotFrattinian",
            Error::AbelianInput => "AbelianInput",
            Error::InternalAssertionFailed(_) => "InternalAssertionFailed",
            Error::MalformedCertificate(_) => "MalformedCertificate",
            Error::Parse(_) => "ParseError",
            Error::InvalidScalar { .. } => "InvalidScalar",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
