use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid symmetry order {0}: must be at least 3")]
    InvalidOrder(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} divides n = {n}; the real-subfield degree is only defined for unramified primes")]
    RamifiedUnsupported { n: u64, p: u64 },

    #[error("n = {0} does not have class number 1; use the n = 23 routines for n = 23")]
    DelegatedToClassNumber(u64),

    #[error("n = {0} is not supported (class number greater than 1)")]
    UnsupportedClassNumber(u64),

    #[error("no tabulated average constant for n = {0}")]
    NotTabulated(u64),

    #[error("input {value} exceeds the limit {limit}; raise the limit to proceed")]
    TooLarge { value: u64, limit: u64 },

    #[error("prime {p} does not split into complex-conjugate pairs for n = {n}")]
    NotSplitting { n: u64, p: u64 },

    #[error("no prime element of norm {p}^{d} found with coefficients bounded by {bound}")]
    SearchExhausted { p: u64, d: u32, bound: i64 },

    #[error("no stored prime element for p = {p}, pair {pair}")]
    MissingOmega { p: u64, pair: usize },

    #[error("words belong to different symmetry orders ({0} and {1})")]
    MismatchedOrder(u64, u64),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("lattice basis is singular")]
    Singular,

    #[error("denominator is zero")]
    DenominatorZero,

    #[error("value is not on the unit circle (|z| = {0})")]
    NotUnitModulus(f64),

    #[error("unsupported shifted-centre case for n = {0}")]
    UnsupportedCase(u64),

    #[error("{num_norm} is not divisible by {p_norm}")]
    DivisibilityViolation { num_norm: u64, p_norm: u64 },

    #[error("prime 23 is ramified for n = 23")]
    Ramified23,

    #[error("window polygon order must be at least 3, got {0}")]
    InvalidPolygon(u64),

    #[error("rotation cannot be expressed in the quadratic subfield basis: {0}")]
    NotExpressible(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
