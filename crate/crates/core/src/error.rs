use thiserror::Error;

/// Errors raised by field construction, polynomial algebra and the
/// inversion routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree too small: n = {0}, need n >= 2")]
    DegreeTooSmall(usize),
    #[error("degree too large: n = {n} exceeds the cap of {max}")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("modulus is not irreducible of degree {0}")]
    NotIrreducible(usize),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("value does not fit in GF(2^{0})")]
    ElementOutOfRange(usize),
    #[error("invalid hex string {0:?}")]
    InvalidHex(String),
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a GF(2)-polynomial: coefficient {0} is not 0 or 1")]
    NotBinary(usize),
    #[error("not a permutation polynomial")]
    NotPermutation,
    #[error("index {index} out of range for size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("n must be odd and at least 3, got {0}")]
    EvenDegree(usize),
    #[error("PP condition violated: tr(1/a) = 0")]
    PpConditionViolated,
    #[error("parameter a must be nonzero")]
    ZeroParameter,
    #[error("not in special class")]
    NotSpecialClass,
    #[error("exhaustive table needs n <= {max}, got {n}")]
    TableTooLarge { n: usize, max: usize },
    #[error("table is not bijective")]
    NotBijective,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
