//! Asynchronous parallel label propagation.
//!
//! Each iteration sweeps the vertex ids in chunks of `chunk_size`; idle
//! workers claim the next chunk from a shared cursor. A vertex picks the label
//! with the largest total weight among its neighbors and, when that differs
//! from its own, adopts it and marks its neighbors for reprocessing. Workers
//! read whatever labels are current, including ones written earlier in the
//! same sweep by themselves or by other workers.
//!
//! Iterations stop when the fraction of vertices that changed label is at
//! most the tolerance, or at the iteration cap.

use alloc::vec::Vec;
use core::sync::atomic::{AtomicU32, AtomicUsize, Ordering};

use crossbeam_utils::CachePadded;

use crate::accumulator::LabelAccumulator;
use crate::community::{CommunityAssignment, PruneFlags, SharedAssignment};
use crate::config::{LpaConfig, TieBreak};
use crate::error::ConfigError;
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq)]
pub struct LpaResult {
    pub assignment: CommunityAssignment,
    pub iterations: usize,
    /// Number of vertices that changed label, one entry per iteration.
    pub delta_history: Vec<usize>,
    /// Seconds spent propagating labels. Always zero without the `std`
    /// feature.
    pub wall_time: f64,
    pub converged: bool,
}

impl LpaResult {
    pub(crate) fn empty() -> Self {
        Self {
            assignment: CommunityAssignment::default(),
            iterations: 0,
            delta_history: Vec::new(),
            wall_time: 0.0,
            converged: true,
        }
    }
}

/// Runs label propagation once with a throwaway engine.
pub fn lpa(g: &Graph, config: &LpaConfig) -> Result<LpaResult, ConfigError> {
    Ok(LpaEngine::new(config.clone())?.run(g))
}

pub(crate) fn within_tolerance(delta: usize, n: usize, tolerance: f64) -> bool {
    delta as f64 / n as f64 <= tolerance
}

/// Reusable label propagation runner.
///
/// Owns one [`LabelAccumulator`] per worker, kept across runs on graphs of
/// the same size. Each accumulator is padded to its own cache line.
#[derive(Debug)]
pub struct LpaEngine {
    config: LpaConfig,
    workers: Vec<CachePadded<LabelAccumulator>>,
}

impl LpaEngine {
    pub fn new(config: LpaConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        Ok(Self {
            config,
            workers: Vec::new(),
        })
    }

    pub fn config(&self) -> &LpaConfig {
        &self.config
    }

    fn threads(&self) -> usize {
        if cfg!(feature = "std") {
            self.config.num_threads
        } else {
            1
        }
    }

    fn prepare_workers(&mut self, n: usize) {
        let t = self.threads();
        if self.workers.len() != t || self.workers.first().map(|w| w.capacity()) != Some(n) {
            self.workers = (0..t)
                .map(|_| CachePadded::new(LabelAccumulator::new(n)))
                .collect();
        }
    }

    /// Labels start as the identity and every vertex starts marked.
    pub fn run(&mut self, g: &Graph) -> LpaResult {
        let n = g.num_vertices();
        if n == 0 {
            return LpaResult::empty();
        }
        self.prepare_workers(n);
        let labels = SharedAssignment::identity(n);
        let flags = PruneFlags::all_marked(n);

        let clock = Stopwatch::start();
        #[cfg(feature = "std")]
        let (delta_history, converged) = if self.threads() > 1 {
            self.iterate_parallel(g, &labels, &flags)
        } else {
            self.iterate_serial(g, &labels, &flags)
        };
        #[cfg(not(feature = "std"))]
        let (delta_history, converged) = self.iterate_serial(g, &labels, &flags);
        let wall_time = clock.elapsed();

        LpaResult {
            assignment: labels.into_assignment(),
            iterations: delta_history.len(),
            delta_history,
            wall_time,
            converged,
        }
    }

    fn iterate_serial(
        &mut self,
        g: &Graph,
        labels: &SharedAssignment,
        flags: &PruneFlags,
    ) -> (Vec<usize>, bool) {
        let n = g.num_vertices();
        let mut history = Vec::new();
        for _ in 0..self.config.max_iterations {
            let delta = self.lpa_move(g, labels, flags);
            history.push(delta);
            if within_tolerance(delta, n, self.config.tolerance) {
                return (history, true);
            }
        }
        (history, false)
    }

    /// Worker threads live for the whole run and meet at a barrier twice per
    /// iteration; the calling thread doubles as worker 0 and decides whether
    /// to continue.
    #[cfg(feature = "std")]
    fn iterate_parallel(
        &mut self,
        g: &Graph,
        labels: &SharedAssignment,
        flags: &PruneFlags,
    ) -> (Vec<usize>, bool) {
        use core::sync::atomic::AtomicBool;
        use std::sync::Barrier;

        let n = g.num_vertices();
        let t = self.threads();
        let config = &self.config;
        let barrier = Barrier::new(t);
        let stop = AtomicBool::new(false);
        let cursor = AtomicUsize::new(0);
        let deltas: Vec<CachePadded<AtomicUsize>> = (0..t)
            .map(|_| CachePadded::new(AtomicUsize::new(0)))
            .collect();
        let visits = VisitLog::new(n);
        let sweep = Sweep::new(g, labels.as_atomics(), flags, &cursor, config, &visits);

        std::thread::scope(|s| {
            let (lead, rest) = self.workers.split_first_mut().expect("at least one worker");
            for (w, acc) in rest.iter_mut().enumerate() {
                let (barrier, stop, deltas, sweep) = (&barrier, &stop, &deltas, &sweep);
                s.spawn(move || loop {
                    barrier.wait();
                    if stop.load(Ordering::Acquire) {
                        break;
                    }
                    deltas[w + 1].store(sweep.run(acc), Ordering::Relaxed);
                    barrier.wait();
                });
            }

            let mut history = Vec::new();
            let mut converged = false;
            for _ in 0..config.max_iterations {
                cursor.store(0, Ordering::Relaxed);
                barrier.wait();
                deltas[0].store(sweep.run(lead), Ordering::Relaxed);
                barrier.wait();
                let delta = deltas.iter().map(|d| d.load(Ordering::Relaxed)).sum();
                history.push(delta);
                visits.reset();
                if within_tolerance(delta, n, config.tolerance) {
                    converged = true;
                    break;
                }
            }
            stop.store(true, Ordering::Release);
            barrier.wait();
            (history, converged)
        })
    }

    /// One sweep over the marked vertices (all vertices when pruning is off).
    /// Returns how many vertices changed label.
    ///
    /// The per-worker counts are summed after the sweep, so the hot loop
    /// never touches a shared counter.
    pub fn lpa_move(&mut self, g: &Graph, labels: &SharedAssignment, flags: &PruneFlags) -> usize {
        let n = g.num_vertices();
        assert_eq!(labels.len(), n, "assignment size must equal vertex count");
        assert_eq!(flags.len(), n, "flag count must equal vertex count");
        if n == 0 {
            return 0;
        }
        self.prepare_workers(n);
        let cursor = AtomicUsize::new(0);
        let visits = VisitLog::new(n);
        let sweep = Sweep::new(
            g,
            labels.as_atomics(),
            flags,
            &cursor,
            &self.config,
            &visits,
        );

        #[cfg(feature = "std")]
        if self.workers.len() > 1 {
            let sweep = &sweep;
            return std::thread::scope(|s| {
                let handles: Vec<_> = self
                    .workers
                    .iter_mut()
                    .map(|acc| s.spawn(move || sweep.run(acc)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("label propagation worker panicked"))
                    .sum()
            });
        }
        sweep.run(&mut self.workers[0])
    }
}

struct Sweep<'a> {
    g: &'a Graph,
    labels: &'a [AtomicU32],
    flags: &'a PruneFlags,
    cursor: &'a AtomicUsize,
    chunk_size: usize,
    pruning: bool,
    tie_break: TieBreak,
    visits: &'a VisitLog,
}

impl<'a> Sweep<'a> {
    fn new(
        g: &'a Graph,
        labels: &'a [AtomicU32],
        flags: &'a PruneFlags,
        cursor: &'a AtomicUsize,
        config: &LpaConfig,
        visits: &'a VisitLog,
    ) -> Self {
        Self {
            g,
            labels,
            flags,
            cursor,
            chunk_size: config.chunk_size,
            pruning: config.pruning,
            tie_break: config.tie_break,
            visits,
        }
    }

    fn run(&self, acc: &mut LabelAccumulator) -> usize {
        let n = self.g.num_vertices();
        let mut changed = 0;
        loop {
            let start = self.cursor.fetch_add(self.chunk_size, Ordering::Relaxed);
            if start >= n {
                return changed;
            }
            let end = n.min(start.saturating_add(self.chunk_size));
            for v in start as VertexId..end as VertexId {
                if self.pruning {
                    if !self.flags.is_marked(v) {
                        continue;
                    }
                    self.flags.unmark(v);
                }
                self.visits.record(v);
                if self.process(acc, v) {
                    changed += 1;
                }
            }
        }
    }

    #[inline]
    fn process(&self, acc: &mut LabelAccumulator, v: VertexId) -> bool {
        acc.scan_communities(self.g, self.labels, v);
        let current = self.labels[v as usize].load(Ordering::Relaxed);
        let best = acc.choose_best_label(current, self.tie_break);
        acc.clear();
        if best == current {
            return false;
        }
        self.labels[v as usize].store(best, Ordering::Relaxed);
        if self.pruning {
            for &u in &self.g.targets()[self.g.arc_range(v)] {
                if u != v {
                    self.flags.mark(u);
                }
            }
        }
        true
    }
}

/// Per-sweep visit counter, present only in debug builds: asserts that no
/// vertex is processed twice within one sweep.
struct VisitLog {
    #[cfg(debug_assertions)]
    counts: Vec<core::sync::atomic::AtomicU8>,
}

impl VisitLog {
    fn new(_n: usize) -> Self {
        Self {
            #[cfg(debug_assertions)]
            counts: (0.._n)
                .map(|_| core::sync::atomic::AtomicU8::new(0))
                .collect(),
        }
    }

    #[inline]
    fn record(&self, _v: VertexId) {
        #[cfg(debug_assertions)]
        {
            let prior = self.counts[_v as usize].fetch_add(1, Ordering::Relaxed);
            debug_assert_eq!(prior, 0, "vertex {_v} processed twice in one sweep");
        }
    }

    #[cfg_attr(not(feature = "std"), allow(dead_code))]
    fn reset(&self) {
        #[cfg(debug_assertions)]
        for c in &self.counts {
            c.store(0, Ordering::Relaxed);
        }
    }
}

pub(crate) struct Stopwatch {
    #[cfg(feature = "std")]
    start: std::time::Instant,
}

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Self {
            #[cfg(feature = "std")]
            start: std::time::Instant::now(),
        }
    }

    pub(crate) fn elapsed(&self) -> f64 {
        #[cfg(feature = "std")]
        return self.start.elapsed().as_secs_f64();
        #[cfg(not(feature = "std"))]
        0.0
    }
}
