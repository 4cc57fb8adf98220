use thiserror::Error;

/// Errors surfaced by the engine.
///
/// Truncation artifacts (`InconsistentTruncation`, `RecursionInclusionFailed`)
/// are reported with the offending degree instead of being silently absorbed;
/// callers are expected to retry with a larger bound.
#[derive(Debug, Clone, Error)]
pub enum EngineError {
    #[error("field characteristic {characteristic} is too small; need 0 or > {needed}")]
    CharacteristicTooSmall { characteristic: u64, needed: u32 },

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },

    #[error("polynomial is not homogeneous for key {expected}: found key {found}")]
    KeyMismatch { expected: String, found: String },

    #[error("annihilator divisor ideal is zero")]
    JZero,

    #[error("separator base ideal is zero")]
    UZero,

    #[error("inclusion precondition violated: {witness} of degree {degree} escapes the base ideal")]
    InclusionViolated { witness: String, degree: u32 },

    #[error("element is not in the ideal: leading monomial {monomial} is irreducible")]
    NotInIdeal { monomial: String },

    #[error("no pivot index exists at bound {bound}; truncated components are inconsistent")]
    InconsistentTruncation { bound: u32 },

    #[error("recursion inclusion failed at degree {degree}: witness {witness}")]
    RecursionInclusionFailed { degree: u32, witness: String },

    #[error("GF modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),

    #[error("scalar arithmetic over mismatched fields")]
    FieldMismatch,
}

pub type Result<T> = std::result::Result<T, EngineError>;
