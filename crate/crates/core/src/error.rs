//! Error type shared by every module of the toolkit.

use thiserror::Error;

/// Any failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The reduction polynomial factors over GF(2) and cannot define a field.
    #[error("reduction polynomial 0x{poly:x} is reducible over GF(2)")]
    ReduciblePolynomial { poly: u64 },

    /// Arithmetic was attempted between elements of different field contexts.
    #[error("operands belong to different field contexts")]
    ContextMismatch,

    /// Inversion of zero, or a negative power of zero.
    #[error("division by zero")]
    DivisionByZero,

    /// A context of the wrong extension degree was supplied.
    #[error("context degree {actual} does not match required degree {expected}")]
    DegreeMismatch { expected: u32, actual: u32 },

    /// 11 is not invertible modulo 2^m + 1, so the exponent family is undefined.
    #[error("11 has no inverse modulo {modulus}")]
    NotInvertible { modulus: u64 },

    /// The rational circle map was evaluated where its denominator vanishes.
    #[error("denominator of the circle map vanished at 0x{at:x}")]
    DenominatorVanished { at: u64 },

    /// An element expected on the unit circle is not on it.
    #[error("element 0x{element:x} is not on the unit circle")]
    NotOnCircle { element: u64 },

    /// A coefficient that must be nonzero was zero.
    #[error("coefficients a and b must both be nonzero")]
    ZeroCoefficient,

    /// The relation a^(2^m)·b = a required by the (u, v) reduction fails.
    #[error("relation a^(2^m)*b = a does not hold for the supplied pair")]
    RelationViolated,

    /// The field does not contain enough roots of the defining polynomial.
    #[error("field contains {found} roots of the defining quintic; {needed} required")]
    FieldTooSmall { needed: u32, found: u32 },

    /// An exhaustive scan was requested over a domain above the configured cap.
    #[error("domain size {size} exceeds cap {cap}")]
    DomainTooLarge { size: u64, cap: u64 },

    /// d·s does not equal the multiplicative group order, or a parameter is zero.
    #[error("d*s = {d}*{s} does not factor the group order {order}")]
    BadFactorization { d: u64, s: u64, order: u64 },

    /// A structurally invalid field description (degree/leading/constant bits).
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),

    /// Element bits outside the range of the context.
    #[error("element bits 0x{bits:x} out of range for degree {degree}")]
    ElementOutOfRange { bits: u64, degree: u32 },

    /// Malformed textual input (field spec strings, polynomial literals).
    #[error("parse error: {0}")]
    Parse(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
