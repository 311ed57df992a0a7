use thiserror::Error;

/// Errors shared by all toolkit modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("code length {0} is not a power of two")]
    LengthNotPowerOfTwo(usize),

    #[error("information bit count {k} out of range for length {n}")]
    DimensionOutOfRange { n: usize, k: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid code spec: {0}")]
    InvalidSpec(String),

    #[error("invalid quantization spec: {0}")]
    InvalidQuant(String),

    #[error("initiation interval {interval} out of range (1..={max})")]
    IntervalOutOfRange { interval: u32, max: u32 },

    #[error("node {0} is not part of the decoder tree")]
    ModeNotInTree(usize),

    #[error("frame size mismatch: mode expects {expected}, got {got}")]
    FrameSizeMismatch { expected: usize, got: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed code-spec file: {0}")]
    Json(#[from] serde_json::Error),
}
