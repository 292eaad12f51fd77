use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("not a dynamical system: degree {degree} < 2")]
    NotDynamical { degree: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("polynomial is not squarefree over F_{prime}")]
    NotSquarefree { prime: u64 },

    #[error("bad reduction at p = {prime}")]
    BadReduction { prime: u64 },

    #[error("resource limit exceeded: {cap} (limit {limit})")]
    Resource { cap: &'static str, limit: u128 },

    #[error("invalid elliptic curve: 4a^3 + 27b^2 = 0")]
    InvalidCurve,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported critical point: {0}; use the modular fallback")]
    UnsupportedPoint(String),

    #[error("discriminant vanishes identically: map is inseparable")]
    Inseparable,

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
