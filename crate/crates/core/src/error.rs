use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported container: {0}")]
    UnsupportedContainer(String),

    #[error("over capacity: combined area is {ratio:.12} times the critical area")]
    OverCapacity { ratio: f64 },

    #[error("circle {index} has area {area}, below the minimum size {min_size}")]
    MinSizeViolation {
        index: usize,
        area: f64,
        min_size: f64,
    },

    #[error("circle {index} has non-positive or non-finite area {area}")]
    NonPositiveArea { index: usize, area: f64 },

    #[error("subcontainer parameters are not conjugated: {0}")]
    NotConjugated(String),

    #[error("circle of area {area} exceeds the container incircle area {incircle}")]
    ExceedsIncircle { area: f64, incircle: f64 },

    #[error("malformed packing tree: {0}")]
    MalformedTree(String),
}

pub type Result<T> = std::result::Result<T, Error>;
