use thiserror::Error;

/// Errors produced by the library's domain operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpdownError {
    #[error("invalid signature character {0:?} (expected '+' or '-')")]
    InvalidSignatureChar(char),

    #[error("invalid composition literal {0:?} (expected \"<+|->:i1,i2,...\")")]
    InvalidCompositionLiteral(String),

    #[error("island lengths must be >= 1")]
    ZeroIsland,

    #[error("binomial requires k <= n (got n={n}, k={k})")]
    BinomialRange { n: u64, k: u64 },

    #[error("the run-type of the empty set is undefined")]
    EmptySet,

    #[error("run-type parts must be >= 1")]
    ZeroRunPart,

    #[error("index {index} out of range for signature length {n}")]
    IndexOutOfRange { n: usize, index: u64 },

    #[error("signature length {n} exceeds the enumeration cap {cap}; pass force to override")]
    EnumerationCap { n: usize, cap: usize },

    #[error("polynomial mentions position {max_position} but the signature has length {len}")]
    SignatureTooShort { max_position: usize, len: usize },

    #[error("position {position} exceeds the monomial capacity of {cap}")]
    PositionOverflow { position: usize, cap: usize },

    #[error("star exponential requires a zero constant term")]
    NonzeroConstantTerm,

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("modulus must be >= 2 (got {0})")]
    ModulusTooSmall(u64),

    #[error("signature length {len} does not match the expected length {expected}")]
    LengthMismatch { expected: usize, len: usize },

    #[error("modulus {modulus} shares a factor with coefficient denominator {denominator}")]
    InadmissibleModulus { modulus: u64, denominator: String },

    #[error("operation requires at least {required} islands (got {got})")]
    TooFewIslands { required: usize, got: usize },

    #[error("inequality checker requires a >= c >= 1 (got a={a}, c={c})")]
    InequalityDomain { a: u32, c: u32 },

    #[error("inequality shift n={n} out of range 0..={max}")]
    InequalityShiftRange { n: u32, max: u32 },

    #[error("internal error: {context} produced the non-integral value {value}")]
    NonIntegralResult { context: &'static str, value: String },

    #[error("internal error: {context} produced the negative value {value}")]
    NegativeCount { context: &'static str, value: String },
}
