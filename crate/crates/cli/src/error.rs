use std::io;

use labelprop_core::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: vertex {vertex} out of range for {num_vertices} vertices")]
    Bounds {
        line: usize,
        vertex: i64,
        num_vertices: usize,
    },
    #[error("unsupported format: {0}")]
    Format(String),
    #[error("invalid graph: {0}")]
    Validation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl LoadError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        LoadError::Parse {
            line,
            message: message.into(),
        }
    }
}
