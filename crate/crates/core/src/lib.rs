//! Shared-memory label propagation for community detection.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature. In that mode the engine runs on the calling thread only and
//! reports a wall time of zero; everything else behaves identically.
//!
//! ```
//! use labelprop_core::{graph::Graph, lpa, quality::modularity, LpaConfig};
//!
//! // two triangles joined by a single bridge
//! let edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (1, 5)];
//! let arcs: Vec<_> = edges
//!     .iter()
//!     .flat_map(|&(u, v)| [(u, v, 1.0), (v, u, 1.0)])
//!     .collect();
//! let g = Graph::from_arcs(6, &arcs).unwrap();
//!
//! let result = lpa(&g, &LpaConfig::default().with_threads(1)).unwrap();
//! let q = modularity(&g, result.assignment.labels()).unwrap();
//! assert!(q > 0.35);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod accumulator;
pub mod community;
pub mod config;
pub mod engine;
pub mod error;
pub mod graph;
pub mod quality;
pub mod reference;

pub use accumulator::{LabelAccumulator, LabelView};
pub use community::{CommunityAssignment, PruneFlags, SharedAssignment};
pub use config::{LpaConfig, TieBreak};
pub use engine::{lpa, LpaEngine, LpaResult};
pub use error::{ConfigError, GraphError, QualityError};
pub use graph::{Graph, VertexId, Violation};
pub use quality::{modularity, modularity_oracle, partition_stats, PartitionStats};
pub use reference::sequential_reference_lpa;
