use thiserror::Error;

/// Errors raised by the library and the batch front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} out of range for sample of length {len}")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid lacunary scheme: {0}")]
    InvalidScheme(String),

    #[error("block {block} is not available (scheme has {available} blocks within the sample)")]
    BlockOutOfRange { block: usize, available: usize },

    #[error("scheme is not a refinement: point {0} of the coarse scheme is missing")]
    NotRefinement(u64),

    #[error("sample too short: {needed} curve points needed, {available} available")]
    SampleTooShort { needed: usize, available: usize },

    #[error("refused: {0}")]
    Refused(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
