//! Line-delimited JSON records written by the CLI.
//!
//! Every record carries a `schema` tag (`labelprop.run/1`,
//! `labelprop.bench/1` or `labelprop.scale/1`); fields are only ever added
//! under a new schema version. `timestamp` is milliseconds since the Unix
//! epoch.

use std::time::{SystemTime, UNIX_EPOCH};

use labelprop_core::{LpaConfig, TieBreak};
use serde::{Deserialize, Serialize};

pub const RUN_SCHEMA: &str = "labelprop.run/1";
pub const BENCH_SCHEMA: &str = "labelprop.bench/1";
pub const SCALE_SCHEMA: &str = "labelprop.scale/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreakName {
    Strict,
    Nonstrict,
}

impl From<TieBreak> for TieBreakName {
    fn from(t: TieBreak) -> Self {
        match t {
            TieBreak::Strict => TieBreakName::Strict,
            TieBreak::NonStrict => TieBreakName::Nonstrict,
        }
    }
}

impl From<TieBreakName> for TieBreak {
    fn from(t: TieBreakName) -> Self {
        match t {
            TieBreakName::Strict => TieBreak::Strict,
            TieBreakName::Nonstrict => TieBreak::NonStrict,
        }
    }
}

/// The configuration a run used; enough to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub tie_break: TieBreakName,
    pub pruning: bool,
    pub chunk_size: usize,
    pub threads: usize,
}

impl From<&LpaConfig> for ConfigEcho {
    fn from(c: &LpaConfig) -> Self {
        Self {
            tolerance: c.tolerance,
            max_iterations: c.max_iterations,
            tie_break: c.tie_break.into(),
            pruning: c.pruning,
            chunk_size: c.chunk_size,
            threads: c.num_threads,
        }
    }
}

impl From<&ConfigEcho> for LpaConfig {
    fn from(e: &ConfigEcho) -> Self {
        LpaConfig {
            tolerance: e.tolerance,
            max_iterations: e.max_iterations,
            tie_break: e.tie_break.into(),
            pruning: e.pruning,
            chunk_size: e.chunk_size,
            num_threads: e.threads,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema: String,
    pub graph: String,
    pub num_vertices: usize,
    pub num_arcs: usize,
    pub config: ConfigEcho,
    pub iterations: usize,
    pub converged: bool,
    pub delta_history: Vec<usize>,
    pub wall_time_seconds: f64,
    pub modularity: f64,
    pub num_communities: usize,
    pub timestamp: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WallTimeSummary {
    pub geomean: f64,
    pub min: f64,
    pub max: f64,
    pub samples: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModularitySummary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub samples: Vec<f64>,
}

/// Aggregate of repeated runs. `speedup` is only present in scaling sweeps
/// and is relative to the sweep's first thread count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub schema: String,
    pub graph: String,
    pub num_vertices: usize,
    pub num_arcs: usize,
    pub config: ConfigEcho,
    pub repetitions: usize,
    pub wall_time_seconds: WallTimeSummary,
    pub modularity: ModularitySummary,
    pub iterations: Vec<usize>,
    pub num_communities: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speedup: Option<f64>,
    pub timestamp: u64,
}

pub fn timestamp_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}

pub fn to_json_line<T: Serialize>(record: &T) -> String {
    serde_json::to_string(record).expect("records serialize")
}
