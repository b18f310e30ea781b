use crate::lattice::CubeId;

/// Library error type. Everything user-facing is a constraint violation on
/// inputs; internal arithmetic never errors (extended reals saturate instead).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid lattice config: {0}")]
    InvalidConfig(String),

    #[error("lattice config mismatch between operands")]
    ConfigMismatch,

    #[error("cube {0} is the window root and has no parent")]
    NoParent(CubeId),

    #[error("cube {0} is at the finest level and has no children")]
    NoChildren(CubeId),

    #[error("cube {cube} is not a member of the lattice: {reason}")]
    InvalidCube { cube: CubeId, reason: String },

    #[error("invalid ball: {0}")]
    InvalidBall(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("family must be pairwise non-overlapping: {0} and {1} are nested or equal")]
    OverlappingFamily(CubeId, CubeId),

    #[error("height below root average: height {height} < average {average} on the stopping root")]
    HeightBelowRootAverage { height: f64, average: f64 },

    #[error("invalid grid data: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
