//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by graph ingestion, spectral computation, metrics and
/// interventions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is disconnected; extract the largest connected component first")]
    Disconnected,

    #[error("every node has an unknown attribute value; nothing to partition")]
    AllUnknown,

    #[error("need at least 2 groups, found {found}")]
    TooFewGroups { found: usize },

    #[error("edge ({u}, {v}) already exists")]
    EdgeExists { u: usize, v: usize },

    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(usize),

    #[error("node index {index} out of bounds for graph with {len} nodes")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("linear system is singular: {0}")]
    Singular(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("refusing to overwrite {0}; pass --force to allow")]
    OutputExists(std::path::PathBuf),
}

pub type Result<T> = std::result::Result<T, Error>;
