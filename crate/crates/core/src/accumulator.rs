//! Per-worker label weight table.
//!
//! A key list records which labels were touched; a values array of length
//! `N` holds the summed weight for each label at index `label`. No hashing
//! and no collisions. Clearing walks only the touched keys, so its cost is
//! proportional to the neighborhood just scanned rather than to `N`.
//!
//! Each worker owns one accumulator for a whole run. The live key count sits
//! in its own cache-line-sized heap allocation: it is the field written on
//! every new label, and keeping it away from other workers' data avoids false
//! sharing.

use alloc::boxed::Box;
use core::sync::atomic::{AtomicU32, Ordering};

use crossbeam_utils::CachePadded;

use crate::config::TieBreak;
use crate::graph::{Graph, VertexId};

/// Read access to the current label of a vertex.
pub trait LabelView {
    fn label_of(&self, v: VertexId) -> VertexId;
}

impl LabelView for [VertexId] {
    #[inline]
    fn label_of(&self, v: VertexId) -> VertexId {
        self[v as usize]
    }
}

impl LabelView for [AtomicU32] {
    #[inline]
    fn label_of(&self, v: VertexId) -> VertexId {
        self[v as usize].load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone)]
pub struct LabelAccumulator {
    keys: Box<[VertexId]>,
    values: Box<[f64]>,
    key_count: Box<CachePadded<usize>>,
}

impl LabelAccumulator {
    /// An empty accumulator able to hold labels in `[0, n)`.
    pub fn new(n: usize) -> Self {
        Self {
            keys: alloc::vec![0; n].into_boxed_slice(),
            values: alloc::vec![0.0; n].into_boxed_slice(),
            key_count: Box::new(CachePadded::new(0)),
        }
    }

    /// Label capacity `N`.
    pub fn capacity(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        **self.key_count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Touched labels in order of first appearance.
    #[inline]
    pub fn keys(&self) -> &[VertexId] {
        &self.keys[..self.len()]
    }

    #[inline]
    pub fn value(&self, label: VertexId) -> f64 {
        self.values[label as usize]
    }

    /// Adds `weight` to `label`. Zero weights are ignored so that every live
    /// key carries a positive value.
    #[inline]
    pub fn add(&mut self, label: VertexId, weight: f64) {
        if weight <= 0.0 {
            return;
        }
        let slot = &mut self.values[label as usize];
        if *slot == 0.0 {
            let n = &mut **self.key_count;
            self.keys[*n] = label;
            *n += 1;
        }
        *slot += weight;
    }

    /// Resets every touched value to zero and forgets the keys.
    #[inline]
    pub fn clear(&mut self) {
        let n = core::mem::take(&mut **self.key_count);
        for &c in &self.keys[..n] {
            self.values[c as usize] = 0.0;
        }
    }

    /// Accumulates the weight of each neighbor label of `v`, skipping
    /// self-loops. The accumulator should be clear beforehand.
    #[inline]
    pub fn scan_communities<L: LabelView + ?Sized>(&mut self, g: &Graph, labels: &L, v: VertexId) {
        for (u, w) in g.neighbors(v) {
            if u != v {
                self.add(labels.label_of(u), w);
            }
        }
    }

    /// Label of maximum accumulated weight, or `current` when nothing was
    /// accumulated.
    pub fn choose_best_label(&self, current: VertexId, mode: TieBreak) -> VertexId {
        let keys = self.keys();
        let Some((&first, rest)) = keys.split_first() else {
            return current;
        };
        match mode {
            TieBreak::Strict => {
                let mut best = first;
                let mut best_w = self.value(first);
                for &c in rest {
                    let w = self.value(c);
                    if w > best_w || (w == best_w && c < best) {
                        best = c;
                        best_w = w;
                    }
                }
                best
            }
            TieBreak::NonStrict => {
                let max_w = keys.iter().map(|&c| self.value(c)).fold(f64::MIN, f64::max);
                let mut tied = keys.iter().copied().filter(|&c| self.value(c) == max_w);
                let d = tied.clone().count();
                tied.nth(current as usize % d).unwrap_or(current)
            }
        }
    }
}

/// Free-function form of [`LabelAccumulator::scan_communities`].
pub fn scan_communities<L: LabelView + ?Sized>(
    acc: &mut LabelAccumulator,
    g: &Graph,
    labels: &L,
    v: VertexId,
) {
    acc.scan_communities(g, labels, v)
}

/// Free-function form of [`LabelAccumulator::choose_best_label`].
pub fn choose_best_label(acc: &LabelAccumulator, current: VertexId, mode: TieBreak) -> VertexId {
    acc.choose_best_label(current, mode)
}
