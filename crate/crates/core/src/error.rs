use core::fmt;

use crate::graph::{VertexId, Violation};

/// Failure while assembling a [`Graph`](crate::graph::Graph).
#[derive(Debug, Clone, PartialEq)]
pub enum GraphError {
    VertexOutOfRange { vertex: u64, num_vertices: usize },
    InvalidWeight { arc: usize, weight: f64 },
    TooManyVertices(usize),
    Malformed(Violation),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange {
                vertex,
                num_vertices,
            } => {
                write!(
                    f,
                    "vertex {vertex} out of range for {num_vertices} vertices"
                )
            }
            GraphError::InvalidWeight { arc, weight } => {
                write!(
                    f,
                    "arc {arc} has invalid weight {weight} (must be finite and nonnegative)"
                )
            }
            GraphError::TooManyVertices(n) => {
                write!(
                    f,
                    "{n} vertices exceed the supported maximum of {}",
                    VertexId::MAX
                )
            }
            GraphError::Malformed(v) => write!(f, "malformed graph: {v}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GraphError {}

/// Rejected [`LpaConfig`](crate::config::LpaConfig).
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Tolerance(f64),
    MaxIterations,
    ChunkSize,
    NumThreads,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Tolerance(t) => write!(f, "tolerance {t} must lie in [0, 1)"),
            ConfigError::MaxIterations => f.write_str("max_iterations must be at least 1"),
            ConfigError::ChunkSize => f.write_str("chunk_size must be at least 1"),
            ConfigError::NumThreads => f.write_str("num_threads must be at least 1"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub enum QualityError {
    /// Total edge weight is zero, so modularity has no value.
    UndefinedModularity,
    LengthMismatch {
        labels: usize,
        num_vertices: usize,
    },
    LabelOutOfRange {
        vertex: usize,
        label: VertexId,
    },
}

impl fmt::Display for QualityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QualityError::UndefinedModularity => {
                f.write_str("undefined modularity: graph has zero total edge weight")
            }
            QualityError::LengthMismatch {
                labels,
                num_vertices,
            } => {
                write!(f, "{labels} labels given for {num_vertices} vertices")
            }
            QualityError::LabelOutOfRange { vertex, label } => {
                write!(f, "vertex {vertex} has label {label} outside [0, N)")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QualityError {}
