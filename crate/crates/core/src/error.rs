use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: scale {left} vs scale {right}")]
    ScaleMismatch { left: u32, right: u32 },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,

    #[error("exponent {0} must be positive")]
    NonPositiveExponent(i64),

    #[error("exponent {exponent} is not representable at scale {scale}")]
    UnrepresentableExponent { exponent: String, scale: u32 },

    #[error("nonzero coefficient at u^{exponent} is not a multiple of the scale {scale}")]
    DescaleFailure { exponent: usize, scale: u32 },

    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,

    #[error("rational function has a pole at t = 1")]
    PoleAtOne,

    #[error("zero rational function has no reciprocal")]
    ZeroFunction,

    #[error("invalid Klein surface type (g={g}, n={n}, a={a}): {reason}")]
    InvalidKlein { g: u32, n: u32, a: u8, reason: &'static str },

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("non-integral codimension for HN type {0}")]
    NonIntegralCodimension(String),

    #[error("rank {r} and degree {d} are not coprime")]
    NotCoprime { r: u32, d: i64 },

    #[error("expected a polynomial of degree {expected}, got {got}")]
    NotPolynomial { expected: usize, got: String },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
