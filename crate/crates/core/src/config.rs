use crate::error::ConfigError;

/// How to pick among several labels that share the maximum weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TieBreak {
    /// Smallest label id wins.
    #[default]
    Strict,
    /// Tied labels, in order of first appearance among the neighbors, are
    /// indexed by `current_label mod tie_count`.
    NonStrict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpaConfig {
    /// Stop once the fraction of vertices that changed label in an iteration
    /// is at most this value.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub tie_break: TieBreak,
    /// Skip vertices whose neighborhood has not changed since they were last
    /// processed.
    pub pruning: bool,
    /// Contiguous vertex ids handed to a worker per scheduling step.
    pub chunk_size: usize,
    pub num_threads: usize,
}

impl LpaConfig {
    pub const DEFAULT_TOLERANCE: f64 = 0.05;
    pub const DEFAULT_MAX_ITERATIONS: usize = 20;
    pub const DEFAULT_CHUNK_SIZE: usize = 2048;

    pub fn validate(&self) -> Result<(), ConfigError> {
        // also rejects NaN
        if !(self.tolerance >= 0.0 && self.tolerance < 1.0) {
            return Err(ConfigError::Tolerance(self.tolerance));
        }
        if self.max_iterations == 0 {
            return Err(ConfigError::MaxIterations);
        }
        if self.chunk_size == 0 {
            return Err(ConfigError::ChunkSize);
        }
        if self.num_threads == 0 {
            return Err(ConfigError::NumThreads);
        }
        Ok(())
    }

    pub fn with_threads(mut self, n: usize) -> Self {
        self.num_threads = n;
        self
    }

    pub fn with_tie_break(mut self, mode: TieBreak) -> Self {
        self.tie_break = mode;
        self
    }

    pub fn with_pruning(mut self, on: bool) -> Self {
        self.pruning = on;
        self
    }

    pub fn with_chunk_size(mut self, n: usize) -> Self {
        self.chunk_size = n;
        self
    }

    /// Deterministic runs need one thread and strict tie-breaking.
    pub fn is_deterministic(&self) -> bool {
        self.num_threads == 1 && self.tie_break == TieBreak::Strict
    }
}

impl Default for LpaConfig {
    fn default() -> Self {
        Self {
            tolerance: Self::DEFAULT_TOLERANCE,
            max_iterations: Self::DEFAULT_MAX_ITERATIONS,
            tie_break: TieBreak::Strict,
            pruning: true,
            chunk_size: Self::DEFAULT_CHUNK_SIZE,
            num_threads: default_threads(),
        }
    }
}

#[cfg(feature = "std")]
fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[cfg(not(feature = "std"))]
fn default_threads() -> usize {
    1
}
