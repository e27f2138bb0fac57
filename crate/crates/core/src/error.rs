use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("cannot parse profile {input:?}: {reason}")]
    ProfileSyntax { input: String, reason: String },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("factor {factor}: expected degree {expected}, got exponent of degree {got}")]
    DegreeMismatch {
        factor: usize,
        expected: u32,
        got: u32,
    },
    #[error("expected {expected} exponent blocks, got {got}")]
    FactorCountMismatch { expected: usize, got: usize },
    #[error("coordinate index {index} out of range (ambient dimension {ambient})")]
    IndexOutOfRange { index: usize, ambient: usize },
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("minor size mismatch: {rows} rows vs {cols} columns")]
    MinorShape { rows: usize, cols: usize },
    #[error("minor size {k} exceeds matrix shape {rows}x{cols}")]
    MinorTooLarge { k: usize, rows: usize, cols: usize },
    #[error("modulus {0} is not an admissible prime")]
    BadModulus(u64),
    #[error("polynomials have mixed degrees {0} and {1}")]
    MixedDegrees(usize, usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("grouping mismatch: {0}")]
    Grouping(String),
    #[error("unknown surface {0:?}")]
    UnknownSurface(String),
    #[error("polynomial format error at line {line}: {reason}")]
    PolyFormat { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
