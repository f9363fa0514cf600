use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("source coincides with a capsule position (singular 1/r)")]
    SingularPosition,

    #[error("empty search domain: {0}")]
    EmptySearchDomain(String),

    #[error("invalid render parameter: {0}")]
    Render(String),

    #[error("negative delay not supported; delay the other channel instead")]
    NegativeDelay,

    #[error("scene validation failed: {0:?}")]
    InvalidScene(Vec<String>),

    #[error("empty scene")]
    EmptyScene,

    #[error("filter design error: {0}")]
    FilterDesign(String),

    #[error("band mapping must be contiguous over (0, Nyquist]: {0}")]
    NonContiguousMapping(String),

    #[error("sample rate mismatch: {0} vs {1}")]
    SampleRateMismatch(u32, u32),

    #[error("empty band selection")]
    EmptySelection,

    #[error("window of {window} samples is shorter than 2*max_lag = {min} samples")]
    WindowTooShort { window: usize, min: usize },

    #[error("histogram binning mismatch: {0}")]
    BinningMismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}
