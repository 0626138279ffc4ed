//! Straightforward sequential label propagation used to cross-check the
//! engine. Visits vertices in ascending id order on one thread and sums
//! neighbor weights in an ordered map instead of the key/value accumulator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::community::CommunityAssignment;
use crate::config::{LpaConfig, TieBreak};
use crate::engine::{within_tolerance, LpaResult, Stopwatch};
use crate::graph::{Graph, VertexId};

/// Label weights around `v` under `labels`, skipping self-loops and
/// zero-weight arcs, plus the order in which labels were first seen.
pub fn neighbor_label_weights(
    g: &Graph,
    labels: &[VertexId],
    v: VertexId,
) -> (BTreeMap<VertexId, f64>, Vec<VertexId>) {
    let mut weights = BTreeMap::new();
    let mut order = Vec::new();
    for (u, w) in g.neighbors(v) {
        if u == v || w == 0.0 {
            continue;
        }
        let c = labels[u as usize];
        weights.entry(c).and_modify(|x| *x += w).or_insert_with(|| {
            order.push(c);
            w
        });
    }
    (weights, order)
}

fn pick(
    weights: &BTreeMap<VertexId, f64>,
    order: &[VertexId],
    current: VertexId,
    mode: TieBreak,
) -> VertexId {
    let Some(max) = weights.values().copied().reduce(f64::max) else {
        return current;
    };
    // BTreeMap iterates in ascending label order
    let tied: Vec<VertexId> = match mode {
        TieBreak::Strict => weights
            .iter()
            .filter(|(_, &w)| w == max)
            .map(|(&c, _)| c)
            .collect(),
        TieBreak::NonStrict => order
            .iter()
            .copied()
            .filter(|c| weights[c] == max)
            .collect(),
    };
    match mode {
        TieBreak::Strict => tied[0],
        TieBreak::NonStrict => tied[current as usize % tied.len()],
    }
}

/// Runs label propagation with `config`, ignoring `num_threads` and
/// `chunk_size`.
pub fn sequential_reference_lpa(g: &Graph, config: &LpaConfig) -> LpaResult {
    let n = g.num_vertices();
    if n == 0 {
        return LpaResult::empty();
    }
    let clock = Stopwatch::start();
    let mut labels: Vec<VertexId> = (0..n as VertexId).collect();
    let mut pending = alloc::vec![true; n];
    let mut history = Vec::new();
    let mut converged = false;
    for _ in 0..config.max_iterations {
        let mut changed = 0;
        for v in 0..n {
            if config.pruning {
                if !pending[v] {
                    continue;
                }
                pending[v] = false;
            }
            let (weights, order) = neighbor_label_weights(g, &labels, v as VertexId);
            let best = pick(&weights, &order, labels[v], config.tie_break);
            if best != labels[v] {
                labels[v] = best;
                changed += 1;
                for (u, _) in g.neighbors(v as VertexId) {
                    if u as usize != v {
                        pending[u as usize] = true;
                    }
                }
            }
        }
        history.push(changed);
        if within_tolerance(changed, n, config.tolerance) {
            converged = true;
            break;
        }
    }
    LpaResult {
        assignment: CommunityAssignment::from_labels(labels).expect("labels stay in range"),
        iterations: history.len(),
        delta_history: history,
        wall_time: clock.elapsed(),
        converged,
    }
}
