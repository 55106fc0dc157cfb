use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("factoring {0} exceeds the configured budget")]
    FactorizationTooHard(u128),
    #[error("target is not in the subgroup generated by the base")]
    NotInSubgroup,
    #[error("discrete logarithm budget exceeded (subgroup order {0})")]
    DlogBudgetExceeded(u128),
    #[error("top-left entry is zero")]
    ZeroCorner,
    #[error("determinant is not one")]
    DetNotOne,
    #[error("computed exponent does not lie in the prime field")]
    ExponentNotInBaseField,
    #[error("constructed messages coincide")]
    DegenerateEqualMessages,
    #[error("alpha*beta does not lie in the prime field")]
    AbNotInBaseField,
    #[error("alpha*beta lies in the prime field")]
    AbInBaseField,
    #[error("no exponent m with m*c*alpha + d != 0")]
    NoValidM,
    #[error("lower-left entry c is zero")]
    ZeroC,
    #[error("lower-left entry of the extended matrix is zero")]
    ZeroCPrime,
    #[error("could not lift the matrix to SL2(Z) after {0} attempts")]
    LiftFailed(u32),
    #[error("no nontrivial multiplicative relation exists")]
    NoNontrivialRelation,
    #[error("operation requires odd characteristic")]
    CharTwo,
    #[error("symbolic degree cap exceeded ({0})")]
    DegreeCapExceeded(u64),
    #[error("matrix is not upper triangular")]
    NotUpperTriangular,
    #[error("certificate rejected: {0}")]
    CertificateInvalid(String),
    #[error("internal check failed: {0}")]
    Verification(String),
}

impl Error {
    /// Stable machine-readable code, used in structured CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::SpecMismatch => "SpecMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidField(_) => "InvalidField",
            Error::InvalidParams(_) => "InvalidParams",
            Error::Parse { .. } => "ParseError",
            Error::FactorizationTooHard(_) => "FactorizationTooHard",
            Error::NotInSubgroup => "NotInSubgroup",
            Error::DlogBudgetExceeded(_) => "DlogBudgetExceeded",
            Error::ZeroCorner => "ZeroCorner",
            Error::DetNotOne => "DetNotOne",
            Error::ExponentNotInBaseField => "ExponentNotInBaseField",
            Error::DegenerateEqualMessages => "DegenerateEqualMessages",
            Error::AbNotInBaseField => "AbNotInBaseField",
            Error::AbInBaseField => "AbInBaseField",
            Error::NoValidM => "NoValidM",
            Error::ZeroC => "ZeroC",
            Error::ZeroCPrime => "ZeroCPrime",
            Error::LiftFailed(_) => "LiftFailed",
            Error::NoNontrivialRelation => "NoNontrivialRelation",
            Error::CharTwo => "CharTwo",
            Error::DegreeCapExceeded(_) => "DegreeCapExceeded",
            Error::NotUpperTriangular => "NotUpperTriangular",
            Error::CertificateInvalid(_) => "CertificateInvalid",
            Error::Verification(_) => "VerificationFailed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
