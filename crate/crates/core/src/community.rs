//! Label storage: the plain per-vertex assignment handed back to callers and
//! the shared forms the engine's workers read and write concurrently.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicU32, AtomicU8, Ordering};

use crate::graph::VertexId;

/// Community id of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CommunityAssignment {
    labels: Vec<VertexId>,
}

impl CommunityAssignment {
    /// Every vertex in its own community: `labels[i] = i`.
    pub fn identity(n: usize) -> Self {
        Self {
            labels: (0..n as VertexId).collect(),
        }
    }

    /// Wraps labels, returning `None` if any label is outside `[0, N)`.
    pub fn from_labels(labels: Vec<VertexId>) -> Option<Self> {
        let n = labels.len();
        labels
            .iter()
            .all(|&c| (c as usize) < n)
            .then_some(Self { labels })
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<VertexId> {
        self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Number of distinct labels in use.
    pub fn num_communities(&self) -> usize {
        let mut seen = alloc::vec![false; self.labels.len()];
        let mut count = 0;
        for &c in &self.labels {
            if !core::mem::replace(&mut seen[c as usize], true) {
                count += 1;
            }
        }
        count
    }
}

/// Labels shared between workers during a run.
///
/// Reads and writes are relaxed atomics: a worker may observe a neighbor's
/// label from before or after a concurrent update, but never a torn value.
/// Only the worker currently processing vertex `i` writes slot `i`.
#[derive(Debug)]
pub struct SharedAssignment {
    labels: Vec<AtomicU32>,
}

impl SharedAssignment {
    pub fn identity(n: usize) -> Self {
        Self {
            labels: (0..n as VertexId).map(AtomicU32::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> VertexId {
        self.labels[v as usize].load(Ordering::Relaxed)
    }

    #[inline]
    pub fn set(&self, v: VertexId, label: VertexId) {
        self.labels[v as usize].store(label, Ordering::Relaxed)
    }

    pub fn as_atomics(&self) -> &[AtomicU32] {
        &self.labels
    }

    pub fn snapshot(&self) -> CommunityAssignment {
        CommunityAssignment {
            labels: self
                .labels
                .iter()
                .map(|c| c.load(Ordering::Relaxed))
                .collect(),
        }
    }

    pub fn into_assignment(self) -> CommunityAssignment {
        CommunityAssignment {
            labels: self.labels.into_iter().map(AtomicU32::into_inner).collect(),
        }
    }
}

impl From<&CommunityAssignment> for SharedAssignment {
    fn from(a: &CommunityAssignment) -> Self {
        Self {
            labels: a.labels.iter().map(|&c| AtomicU32::new(c)).collect(),
        }
    }
}

/// One byte per vertex; nonzero means the vertex is due for processing.
///
/// Concurrent marks of the same vertex are idempotent byte stores, so a lost
/// race only postpones a vertex by one iteration.
#[derive(Debug)]
pub struct PruneFlags {
    flags: Vec<AtomicU8>,
}

impl PruneFlags {
    pub fn all_marked(n: usize) -> Self {
        Self {
            flags: (0..n).map(|_| AtomicU8::new(1)).collect(),
        }
    }

    pub fn none_marked(n: usize) -> Self {
        Self {
            flags: (0..n).map(|_| AtomicU8::new(0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    #[inline]
    pub fn is_marked(&self, v: VertexId) -> bool {
        self.flags[v as usize].load(Ordering::Relaxed) != 0
    }

    #[inline]
    pub fn mark(&self, v: VertexId) {
        self.flags[v as usize].store(1, Ordering::Relaxed)
    }

    #[inline]
    pub fn unmark(&self, v: VertexId) {
        self.flags[v as usize].store(0, Ordering::Relaxed)
    }

    pub fn count_marked(&self) -> usize {
        self.flags
            .iter()
            .filter(|f| f.load(Ordering::Relaxed) != 0)
            .count()
    }

    pub fn mark_all(&self) {
        for f in &self.flags {
            f.store(1, Ordering::Relaxed);
        }
    }
}
