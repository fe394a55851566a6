use thiserror::Error;

/// Errors raised by the algebra and code-construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("field GF({p}^{m}) is too large for this implementation")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no order")]
    ZeroOrder,
    #[error("GF({p}^{sub}) is not a subfield of GF({p}^{sup})")]
    IncompatibleDegrees { p: u64, sub: u32, sup: u32 },
    #[error("not in subfield")]
    NotInSubfield,
    #[error("λ must be a unit")]
    LambdaNotUnit,
    #[error("{s} is not coprime to {modulus}")]
    NotCoprime { s: i64, modulus: u64 },
    #[error("μ_{s} does not preserve 1+rZ_{{n'r}} (s ≢ 1 mod {r})")]
    NotPreservingClass { s: i64, r: u64 },
    #[error("coset function domain mismatch")]
    DomainMismatch,
    #[error("invalid coset function: {0}")]
    InvalidCosetFunction(String),
    #[error("coset not Galois-stable")]
    NotGaloisStable,
    #[error("not a constacyclic generator")]
    NotAGenerator,
    #[error("elements belong to different quotient rings")]
    RingMismatch,
    #[error("enumeration too large: {size} exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("expected an odd integer with |k| >= 3, got {0}")]
    InvalidLemmaArgument(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
