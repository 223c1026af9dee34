use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must contain at least one index")]
    EmptyGroundSet,

    #[error("index {index} is out of range for a ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("partial injection is not injective: source {0} appears twice")]
    DuplicateSource(usize),

    #[error("partial injection is not injective: target {0} appears twice")]
    DuplicateTarget(usize),

    #[error("malformed partition: {0}")]
    BadPartition(String),

    #[error("non-canonical encoding: {0}")]
    NonCanonical(String),

    #[error("model violates the standing hypotheses: {0}")]
    InvalidModel(String),

    #[error("malformed partial dynamical system: {0}")]
    BadSystem(String),

    #[error("point {point} is not in the domain of alpha^{requested}: the orbit leaves the domain at depth {depth}")]
    OutsideDomain {
        point: String,
        requested: usize,
        depth: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element is not in the algebra: {0}")]
    NotInAlgebra(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid fuzz configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
