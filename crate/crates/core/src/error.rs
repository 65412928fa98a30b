use thiserror::Error;

use crate::means::Transform;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// A value lies outside the domain of the transform that was asked of it.
    #[error("value {value} is outside the domain of the {transform} transform")]
    Domain { value: f64, transform: Transform },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid basket: {0}")]
    InvalidBasket(String),

    #[error("degenerate point cloud: {0}")]
    DegenerateCloud(String),
}
