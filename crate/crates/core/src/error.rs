use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: d = {left} vs d = {right}")]
    AlphabetMismatch { left: u32, right: u32 },

    #[error("alphabet size must be at least {min}, got {d}")]
    InvalidAlphabet { d: u32, min: u32 },

    #[error("letter {letter} out of range [1, {d}]")]
    LetterOutOfRange { letter: u64, d: u32 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("element is not in the core: nonzero component of degree {degree}")]
    NotInCore { degree: i64 },

    #[error("element has level {level}, which exceeds the requested level {max}")]
    LevelTooHigh { level: usize, max: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no annihilating word found with r <= {r_max}; raise r_max (the search always terminates for a large enough bound)")]
    BoundExceeded { r_max: usize },

    #[error("element is zero")]
    ZeroElement,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("d = {d} exceeds the enumeration cap {cap}")]
    EnumerationCap { d: usize, cap: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("invalid JSON input: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
