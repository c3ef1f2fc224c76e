use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid graphon: {0}")]
    InvalidGraphon(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cycle enumeration exceeded the cap of {cap} cycles (raise it with --cycle-cap)")]
    CycleCapExceeded { cap: usize },

    #[error("block {block} has no self-loop")]
    NoSelfLoop { block: usize },

    #[error("skeleton is not symmetric")]
    NotSymmetric,

    #[error("skeleton has a self-loop at node {node}")]
    SelfLoop { node: usize },

    #[error("skeleton is not strongly connected")]
    NotStronglyConnected,

    #[error("y is not in the node-flow cone")]
    NotInCone,

    #[error("y is not in X_0 (no decomposition with every cycle used)")]
    NotInX0,

    #[error("flow matrix is not balanced")]
    Unbalanced,

    #[error("flow matrix uses a pair that is not a skeleton edge: ({0}, {1})")]
    OffSkeleton(usize, usize),

    #[error("graph is not partite for the skeleton: {0}")]
    NotPartite(String),

    #[error("block {block} is empty")]
    EmptyBlock { block: usize },

    #[error("no witness found: {0}")]
    NoWitness(String),
}

impl Error {
    /// True for errors that mean "the input is well formed but the requested
    /// object does not exist".
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::CycleCapExceeded { .. }
                | Error::NoSelfLoop { .. }
                | Error::NotSymmetric
                | Error::SelfLoop { .. }
                | Error::NotStronglyConnected
                | Error::NotInCone
                | Error::NotInX0
                | Error::Unbalanced
                | Error::OffSkeleton(..)
                | Error::NotPartite(_)
                | Error::EmptyBlock { .. }
                | Error::NoWitness(_)
        )
    }
}
