use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible series")]
    NonInvertibleSeries,
    #[error("composition requires zero constant term")]
    CompositionConstantTerm,
    #[error("argument not x-positive")]
    ArgumentNotXPositive,
    #[error("k out of range: {0}")]
    KOutOfRange(usize),
    #[error("unsupported k = {k}: {reason}")]
    UnsupportedK { k: usize, reason: &'static str },
    #[error("non-integral coefficient at index {0}")]
    NonIntegral(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("no singularity located for k = {0}")]
    NoSingularity(usize),
    #[error("denominator root: {0}")]
    DenominatorRoot(String),
    #[error("insufficient range: {0}")]
    InsufficientRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
