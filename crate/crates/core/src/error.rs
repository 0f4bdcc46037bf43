use std::io;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = GmmError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum GmmError {
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has {nodes} nodes, limit is {limit}")]
    GraphTooLarge { nodes: usize, limit: usize },
    #[error("tau must be at least 2, got {0}")]
    TauTooSmall(usize),
    #[error("tau {0} exceeds the supported maximum of 6 (census cost grows with catalog size times per-motif matching cost)")]
    TauTooLarge(usize),
    #[error("no observable structure: census counts are all zero")]
    NoObservableStructure,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("trace does not match config: {0}")]
    TraceMismatch(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl GmmError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        GmmError::InvalidParameter(msg.into())
    }
}

/// Reads a whole file, naming the path in any error.
pub fn read_file(path: impl AsRef<std::path::Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path)
        .map_err(|e| GmmError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}
