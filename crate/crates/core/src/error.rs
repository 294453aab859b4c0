use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable '{name}' (ring has {nvars} variables)")]
    UnknownVariable { name: String, nvars: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("images have mixed degrees")]
    MixedDegrees,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("too many variables: {0} (at most {max})", max = crate::polycore::MAX_VARS)]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("ambient too small: the target would be P^{0}")]
    AmbientTooSmall(i64),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("resolution is not minimal")]
    NonMinimal,
    #[error("the zero ideal has no finite codimension data here")]
    ZeroIdeal,
    #[error("ideal file: {0}")]
    IdealFile(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
