use thiserror::Error;

/// Errors raised by the group computations and the optimization kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator x{gen} is out of range for rank {rank}")]
    Rank { gen: usize, rank: usize },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("degree must be at least {min}, got {degree}")]
    Degree { degree: usize, min: usize },

    #[error("parse error at token {position} ({token:?}): {reason}")]
    Parse {
        position: usize,
        token: String,
        reason: String,
    },

    #[error("{kernel} capacity exceeded: {size} > cap {cap}")]
    Capacity {
        kernel: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("structural mismatch: {0}")]
    Structure(String),

    #[error("distance exceeds search radius {radius}")]
    RadiusExceeded { radius: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::RadiusExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
