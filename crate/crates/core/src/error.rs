use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field degree m={0} is outside the supported range 2..=8")]
    DegreeOutOfRange(u32),
    #[error("polynomial {poly:#x} is not primitive of degree {m}")]
    NotPrimitive { m: u32, poly: u32 },
    #[error("the zero element has no logarithm or inverse")]
    ZeroElement,
    #[error("element bits {bits:#x} do not fit in GF(2^{m})")]
    ElementOutOfRange { m: u32, bits: u32 },
    #[error("invalid subgroup basis: {0}")]
    InvalidBasis(String),
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid layer schedule: {0}")]
    InvalidSchedule(String),
    #[error("check node degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("brute-force enumeration of {0} configurations exceeds the 2^20 guard")]
    OracleGuard(u64),
    #[error("noise standard deviation must be positive, got {0}")]
    InvalidSigma(f64),
    #[error("permutation is not a bijection: {0}")]
    NotBijective(String),
    #[error("width {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("zero denominator in savings ratio")]
    ZeroDenominator,
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
