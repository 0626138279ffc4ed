use std::collections::HashMap;

use labelprop_core::{
    lpa, modularity, modularity_oracle, sequential_reference_lpa, Graph, LabelAccumulator,
    LpaConfig, LpaEngine, PruneFlags, SharedAssignment, TieBreak, VertexId,
};
use proptest::prelude::*;

/// Random undirected multigraph with small integer-ish weights so that label
/// ties are common. Self-loops appear occasionally.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let edge = (
                0..n as u32,
                0..n as u32,
                prop::sample::select(vec![0.5, 1.0, 1.0, 2.0, 3.0]),
            );
            (Just(n), prop::collection::vec(edge, 0..=3 * n))
        })
        .prop_map(|(n, edges)| {
            let mut arcs = Vec::new();
            for (u, v, w) in edges {
                arcs.push((u, v, w));
                if u != v {
                    arcs.push((v, u, w));
                }
            }
            Graph::from_arcs(n, &arcs).unwrap()
        })
}

fn graph_and_labels(max_n: usize) -> impl Strategy<Value = (Graph, Vec<VertexId>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.num_vertices() as u32;
        let k = 1..=n;
        (Just(g), k).prop_flat_map(move |(g, k)| {
            let labels = prop::collection::vec(0..k, n as usize);
            (Just(g), labels)
        })
    })
}

fn map_accumulate(g: &Graph, labels: &[VertexId], v: VertexId) -> HashMap<VertexId, f64> {
    let mut m = HashMap::new();
    let (lo, hi) = (g.offsets()[v as usize], g.offsets()[v as usize + 1]);
    for k in lo..hi {
        let (u, w) = (g.targets()[k], g.weights()[k]);
        if u != v && w != 0.0 {
            *m.entry(labels[u as usize]).or_insert(0.0) += w;
        }
    }
    m
}

fn components(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for (u, _) in g.neighbors(v as VertexId) {
                if comp[u as usize] == usize::MAX {
                    comp[u as usize] = s;
                    stack.push(u as usize);
                }
            }
        }
    }
    comp
}

fn serial(mode: TieBreak, pruning: bool) -> LpaConfig {
    LpaConfig::default()
        .with_threads(1)
        .with_tie_break(mode)
        .with_pruning(pruning)
}

fn scaled(g: &Graph, factor: f64) -> Graph {
    let w = g.weights().iter().map(|w| w * factor).collect();
    Graph::from_csr(g.offsets().to_vec(), g.targets().to_vec(), w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn loaded_graphs_validate(g in graph_strategy(200)) {
        prop_assert!(g.validate().is_empty());
        let total: f64 = g.weighted_degrees().iter().sum();
        prop_assert_eq!(total.to_bits(), g.total_weight().to_bits());
        let arc_sum: f64 = g.weights().iter().sum();
        prop_assert!((arc_sum - g.total_weight()).abs() <= 1e-9 * arc_sum.max(1.0));
    }

    #[test]
    fn accumulator_matches_map((g, labels) in graph_and_labels(300)) {
        let mut acc = LabelAccumulator::new(g.num_vertices());
        for v in 0..g.num_vertices() as VertexId {
            acc.scan_communities(&g, labels.as_slice(), v);
            let expected = map_accumulate(&g, &labels, v);
            prop_assert_eq!(acc.len(), expected.len());
            for (&c, &w) in &expected {
                prop_assert_eq!(acc.value(c).to_bits(), w.to_bits());
            }
            let mut keys = acc.keys().to_vec();
            keys.sort_unstable();
            keys.dedup();
            prop_assert_eq!(keys.len(), acc.len());
            acc.clear();
            prop_assert!(acc.is_empty());
        }
    }

    #[test]
    fn strict_choice_is_scale_invariant(
        (g, labels) in graph_and_labels(100),
        factor in prop::sample::select(vec![1e-3, 0.5, 3.0, 1e3, 7.25]),
    ) {
        let h = scaled(&g, factor);
        let mut a = LabelAccumulator::new(g.num_vertices());
        let mut b = LabelAccumulator::new(g.num_vertices());
        for v in 0..g.num_vertices() as VertexId {
            a.scan_communities(&g, labels.as_slice(), v);
            b.scan_communities(&h, labels.as_slice(), v);
            prop_assert_eq!(
                a.choose_best_label(labels[v as usize], TieBreak::Strict),
                b.choose_best_label(labels[v as usize], TieBreak::Strict)
            );
            a.clear();
            b.clear();
        }
    }

    #[test]
    fn modularity_matches_oracle((g, labels) in graph_and_labels(150)) {
        prop_assume!(g.total_weight() > 0.0);
        let q = modularity(&g, &labels).unwrap();
        let o = modularity_oracle(&g, &labels).unwrap();
        prop_assert!((q - o).abs() <= 1e-9, "{} vs {}", q, o);
        prop_assert!((-0.5 - 1e-9..=1.0 + 1e-9).contains(&q));
    }

    #[test]
    fn modularity_ignores_label_names((g, labels) in graph_and_labels(150), seed in any::<u64>()) {
        prop_assume!(g.total_weight() > 0.0);
        let n = g.num_vertices();
        // bijection: rotate then reverse ids
        let shift = (seed % n as u64) as usize;
        let rename = |c: VertexId| ((n - 1) - (c as usize + shift) % n) as VertexId;
        let renamed: Vec<_> = labels.iter().map(|&c| rename(c)).collect();
        let a = modularity(&g, &labels).unwrap();
        let b = modularity(&g, &renamed).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn singleton_partition_closed_form(g in graph_strategy(150)) {
        let loops = g.arcs().any(|(u, v, _)| u == v);
        prop_assume!(!loops && g.total_weight() > 0.0);
        let n = g.num_vertices();
        let identity: Vec<VertexId> = (0..n as VertexId).collect();
        let two_m = g.total_weight();
        let expected: f64 = -g.weighted_degrees().iter().map(|k| (k / two_m).powi(2)).sum::<f64>();
        let q = modularity(&g, &identity).unwrap();
        prop_assert!((q - expected).abs() <= 1e-12);
    }

    #[test]
    fn serial_engine_equals_reference(
        g in graph_strategy(200),
        mode in prop::sample::select(vec![TieBreak::Strict, TieBreak::NonStrict]),
        pruning in any::<bool>(),
        chunk in 1usize..64,
    ) {
        let config = serial(mode, pruning).with_chunk_size(chunk);
        let a = lpa(&g, &config).unwrap();
        let b = sequential_reference_lpa(&g, &config);
        prop_assert_eq!(&a.assignment, &b.assignment);
        prop_assert_eq!(&a.delta_history, &b.delta_history);
        prop_assert_eq!(a.converged, b.converged);
    }

    #[test]
    fn run_contract(
        g in graph_strategy(200),
        threads in 1usize..=4,
        mode in prop::sample::select(vec![TieBreak::Strict, TieBreak::NonStrict]),
        chunk in 1usize..32,
    ) {
        let config = LpaConfig::default()
            .with_threads(threads)
            .with_tie_break(mode)
            .with_chunk_size(chunk);
        let r = lpa(&g, &config).unwrap();
        let n = g.num_vertices();
        prop_assert!(r.iterations >= 1 && r.iterations <= config.max_iterations);
        prop_assert_eq!(r.delta_history.len(), r.iterations);
        if r.converged {
            let last = *r.delta_history.last().unwrap();
            prop_assert!(last as f64 / n as f64 <= config.tolerance);
        } else {
            prop_assert_eq!(r.iterations, config.max_iterations);
        }
        // labels only move along arcs, so each one stays inside the connected
        // component of the vertex that started with it
        let comp = components(&g);
        for (v, &c) in r.assignment.labels().iter().enumerate() {
            prop_assert!((c as usize) < n);
            prop_assert_eq!(comp[v], comp[c as usize]);
        }
    }

    #[test]
    fn pruning_does_not_change_strict_serial(g in graph_strategy(200)) {
        let on = lpa(&g, &serial(TieBreak::Strict, true)).unwrap();
        let off = lpa(&g, &serial(TieBreak::Strict, false)).unwrap();
        prop_assert_eq!(on.assignment, off.assignment);
        prop_assert_eq!(on.delta_history, off.delta_history);
    }

    #[test]
    fn zero_delta_is_a_fixed_point(g in graph_strategy(150)) {
        let n = g.num_vertices();
        let labels = SharedAssignment::identity(n);
        let mut engine = LpaEngine::new(serial(TieBreak::Strict, true)).unwrap();
        let flags = PruneFlags::all_marked(n);
        let mut delta = usize::MAX;
        for _ in 0..200 {
            delta = engine.lpa_move(&g, &labels, &flags);
            if delta == 0 {
                break;
            }
        }
        prop_assume!(delta == 0);
        let mut unpruned = LpaEngine::new(serial(TieBreak::Strict, false)).unwrap();
        prop_assert_eq!(unpruned.lpa_move(&g, &labels, &PruneFlags::none_marked(n)), 0);
    }

    /// Replays each pruned sweep as an unpruned sweep that tracks which
    /// vertices would have been eligible. Every vertex that changes must have
    /// been eligible when visited, and the resulting labels must agree.
    #[test]
    fn pruning_is_sound(g in graph_strategy(200)) {
        let n = g.num_vertices();
        let labels = SharedAssignment::identity(n);
        let flags = PruneFlags::all_marked(n);
        let mut engine = LpaEngine::new(serial(TieBreak::Strict, true)).unwrap();
        for _ in 0..20 {
            let mut shadow_labels = labels.snapshot().into_labels();
            let mut shadow_flags: Vec<bool> = (0..n as VertexId).map(|v| flags.is_marked(v)).collect();
            let mut shadow_delta = 0;
            for v in 0..n {
                let eligible = std::mem::replace(&mut shadow_flags[v], false);
                let m = map_accumulate(&g, &shadow_labels, v as VertexId);
                let best = m
                    .iter()
                    .fold(None, |best: Option<(VertexId, f64)>, (&c, &w)| match best {
                        Some((bc, bw)) if bw > w || (bw == w && bc < c) => Some((bc, bw)),
                        _ => Some((c, w)),
                    })
                    .map_or(shadow_labels[v], |(c, _)| c);
                if best != shadow_labels[v] {
                    prop_assert!(eligible, "vertex {} changed while ineligible", v);
                    shadow_labels[v] = best;
                    shadow_delta += 1;
                    for (u, _) in g.neighbors(v as VertexId) {
                        if u as usize != v {
                            shadow_flags[u as usize] = true;
                        }
                    }
                }
            }
            let delta = engine.lpa_move(&g, &labels, &flags);
            prop_assert_eq!(delta, shadow_delta);
            prop_assert_eq!(labels.snapshot().into_labels(), shadow_labels);
            if delta == 0 {
                break;
            }
        }
    }
}

#[test]
fn reference_is_deterministic() {
    let mut arcs = Vec::new();
    for i in 0..50u32 {
        for j in [i + 1, i + 7, i * 3 + 1] {
            let j = j % 50;
            if i != j {
                arcs.push((i, j, 1.0));
                arcs.push((j, i, 1.0));
            }
        }
    }
    let g = Graph::from_arcs(50, &arcs).unwrap();
    let config = LpaConfig::default();
    let a = sequential_reference_lpa(&g, &config);
    let b = sequential_reference_lpa(&g, &config);
    assert_eq!(a.assignment, b.assignment);
    assert_eq!(a.delta_history, b.delta_history);
}
