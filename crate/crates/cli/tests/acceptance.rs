//! End-to-end acceptance checks. Each criterion prints one line:
//! `PASS`, `FAIL`, or `NOT EVALUATED` when the machine cannot host it.
//! The process exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use labelprop::bench::{hardware_threads, scale};
use labelprop::membership::membership_bytes;
use labelprop::synth::{barbell, clique_ring, planted_partition, PlantedGraph};
use labelprop_core::{
    lpa, modularity, modularity_oracle, sequential_reference_lpa, Graph, LabelAccumulator,
    LpaConfig, LpaResult, TieBreak, VertexId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    NotEvaluated(String),
}

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    let mut add = |name: &str, p: PlantedGraph| out.push((name.into(), p.to_graph()));
    add("clique-ring-8x6", clique_ring(8, 6).unwrap());
    add("clique-ring-32x8", clique_ring(32, 8).unwrap());
    add("barbell-4", barbell(4).unwrap());
    add("barbell-8", barbell(8).unwrap());
    add(
        "planted-1000",
        planted_partition(1000, 10, 0.2, 0.001, 42).unwrap(),
    );
    add(
        "planted-10000",
        planted_partition(10_000, 20, 0.02, 0.0002, 1).unwrap(),
    );

    // the same planted graph with uneven dyadic weights
    let p = planted_partition(1000, 10, 0.1, 0.002, 7).unwrap();
    let arcs: Vec<_> = p
        .edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, v))| {
            let w = [0.5, 1.0, 1.5, 2.0][i % 4];
            [(u, v, w), (v, u, w)]
        })
        .collect();
    out.push((
        "planted-1000-weighted".into(),
        Graph::from_arcs(p.num_vertices, &arcs).unwrap(),
    ));

    // sparse random graph with isolated vertices and a few self-loops
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut arcs = Vec::new();
    for _ in 0..1500 {
        let (u, v) = (rng.random_range(0..2000u32), rng.random_range(0..2000u32));
        arcs.push((u, v, 1.0));
        if u != v {
            arcs.push((v, u, 1.0));
        }
    }
    out.push((
        "random-sparse".into(),
        Graph::from_arcs(2000, &arcs).unwrap(),
    ));
    out
}

fn strict_serial() -> LpaConfig {
    LpaConfig::default()
        .with_threads(1)
        .with_tie_break(TieBreak::Strict)
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, weighted: bool) -> Graph {
    let n = rng.random_range(1..=max_n);
    let density: f64 = rng.random_range(0.0..8.0);
    let m = (density * n as f64) as usize;
    let mut arcs = Vec::with_capacity(2 * m);
    for _ in 0..m {
        let u = rng.random_range(0..n as u32);
        let v = rng.random_range(0..n as u32);
        let w = if weighted {
            rng.random_range(1..=16) as f64 * 0.25
        } else {
            1.0
        };
        arcs.push((u, v, w));
        if u != v {
            arcs.push((v, u, w));
        }
    }
    Graph::from_arcs(n, &arcs).unwrap()
}

fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Vec<VertexId> {
    let k = rng.random_range(1..=n as u32);
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// True when `a` and `b` induce the same partition.
fn same_partition(a: &[VertexId], b: &[VertexId]) -> bool {
    let mut fwd = HashMap::new();
    let mut bwd = HashMap::new();
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(&x, &y)| *fwd.entry(x).or_insert(y) == y && *bwd.entry(y).or_insert(x) == x)
}

fn path_graph(n: u32) -> Graph {
    let arcs: Vec<_> = (1..n)
        .flat_map(|v| [(v - 1, v, 1.0), (v, v - 1, 1.0)])
        .collect();
    Graph::from_arcs(n as usize, &arcs).unwrap()
}

fn modularity_oracle_equivalence() -> Check {
    let start = Instant::now();
    let triangle = Graph::from_arcs(
        3,
        &[
            (0, 1, 1.0),
            (1, 0, 1.0),
            (1, 2, 1.0),
            (2, 1, 1.0),
            (0, 2, 1.0),
            (2, 0, 1.0),
        ],
    )
    .unwrap();
    let edge = path_graph(2);
    let hand = [
        (
            "triangle, one community",
            modularity(&triangle, &[0, 0, 0]).unwrap(),
            0.0,
        ),
        (
            "triangle, singletons",
            modularity(&triangle, &[0, 1, 2]).unwrap(),
            -1.0 / 3.0,
        ),
        ("split edge", modularity(&edge, &[0, 1]).unwrap(), -0.5),
    ];
    for (name, q, want) in hand {
        ensure!((q - want).abs() <= 1e-12, "{name}: {q} != {want}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut scored = 0;
    for _ in 0..200 {
        let weighted = rng.random_bool(0.5);
        let g = random_graph(&mut rng, 1000, weighted);
        let labels = random_labels(&mut rng, g.num_vertices());
        if g.total_weight() == 0.0 {
            ensure!(modularity(&g, &labels).is_err(), "edgeless graph scored");
            continue;
        }
        let q = modularity(&g, &labels).unwrap();
        let o = modularity_oracle(&g, &labels).unwrap();
        worst = worst.max((q - o).abs());
        scored += 1;
    }
    let elapsed = start.elapsed();
    ensure!(worst <= 1e-9, "max |Q - oracle| = {worst:e}");
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("200 graphs ({scored} scored), max |Q - oracle| = {worst:.1e}, hand cases exact, {elapsed:.2?}"))
}

fn accumulator_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0usize;
    for _ in 0..50 {
        let g = random_graph(&mut rng, 1000, true);
        let n = g.num_vertices();
        let labels = random_labels(&mut rng, n);
        let mut acc = LabelAccumulator::new(n);
        for v in 0..n as VertexId {
            let mut map: HashMap<VertexId, f64> = HashMap::new();
            for (u, w) in g.neighbors(v) {
                if u != v {
                    *map.entry(labels[u as usize]).or_default() += w;
                }
            }
            acc.scan_communities(&g, labels.as_slice(), v);
            ensure!(
                acc.len() == map.len(),
                "vertex {v}: {} keys vs {}",
                acc.len(),
                map.len()
            );
            for (&c, &w) in &map {
                ensure!(
                    acc.value(c).to_bits() == w.to_bits(),
                    "vertex {v} label {c}: {} vs {w}",
                    acc.value(c)
                );
            }
            acc.clear();
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!(
        "50 graphs, {checked} vertices bit-exact, {elapsed:.2?}"
    ))
}

fn determinism(corpus: &[(String, Graph)]) -> Check {
    for (name, g) in corpus {
        let first = membership_bytes(lpa(g, &strict_serial()).unwrap().assignment.labels());
        for rep in 1..5 {
            let again = membership_bytes(lpa(g, &strict_serial()).unwrap().assignment.labels());
            ensure!(again == first, "{name}: repetition {rep} differs");
        }
    }
    Ok(format!("{} graphs x 5 repetitions identical", corpus.len()))
}

fn planted_recovery() -> Check {
    let cases = [
        ("clique-ring k=32 s=8", clique_ring(32, 8).unwrap()),
        ("barbell s=8", barbell(8).unwrap()),
    ];
    let mut runs = 0;
    let mut max_iters = 0;
    for (name, p) in &cases {
        let g = p.to_graph();
        for threads in [1, 2, 4] {
            // chunk sizes are multiples of the clique size so a chunk never
            // splits a clique; each gives a different work ordering
            for chunk in [8, 16, 64, 256, 2048] {
                let config = LpaConfig::default()
                    .with_threads(threads)
                    .with_chunk_size(chunk);
                let r = lpa(&g, &config).unwrap();
                ensure!(
                    same_partition(r.assignment.labels(), &p.truth),
                    "{name}, {threads} threads, chunk {chunk}: {} communities",
                    r.assignment.num_communities()
                );
                ensure!(r.iterations <= 20, "{name}: {} iterations", r.iterations);
                max_iters = max_iters.max(r.iterations);
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} runs recovered exactly, at most {max_iters} iterations"
    ))
}

fn check_contract(name: &str, g: &Graph, config: &LpaConfig, r: &LpaResult) -> Result<(), String> {
    let n = g.num_vertices().max(1) as f64;
    ensure!(r.iterations <= 20, "{name}: {} iterations", r.iterations);
    ensure!(
        r.delta_history.len() == r.iterations,
        "{name}: history length {}",
        r.delta_history.len()
    );
    let last = *r
        .delta_history
        .last()
        .ok_or(format!("{name}: empty history"))? as f64;
    if r.converged {
        ensure!(
            last / n <= config.tolerance,
            "{name}: converged with dN/N = {}",
            last / n
        );
    } else {
        ensure!(
            r.iterations == config.max_iterations,
            "{name}: stopped early without converging"
        );
    }
    Ok(())
}

fn convergence_contract(corpus: &[(String, Graph)]) -> Check {
    let mut runs = 0;
    for (name, g) in corpus {
        for threads in [1, 4] {
            for mode in [TieBreak::Strict, TieBreak::NonStrict] {
                let config = LpaConfig::default()
                    .with_threads(threads)
                    .with_tie_break(mode);
                check_contract(name, g, &config, &lpa(g, &config).unwrap())?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} runs within the iteration cap and tolerance"
    ))
}

fn pruning_neutrality(corpus: &[(String, Graph)]) -> Check {
    let mut worst = 0.0f64;
    for (name, g) in corpus {
        let on = lpa(g, &strict_serial().with_pruning(true)).unwrap();
        let off = lpa(g, &strict_serial().with_pruning(false)).unwrap();
        ensure!(
            on.assignment == off.assignment,
            "{name}: 1-thread labels differ"
        );

        let four = LpaConfig::default().with_threads(4);
        let q_on = modularity(
            g,
            lpa(g, &four.clone().with_pruning(true))
                .unwrap()
                .assignment
                .labels(),
        );
        let q_off = modularity(
            g,
            lpa(g, &four.with_pruning(false))
                .unwrap()
                .assignment
                .labels(),
        );
        let diff = (q_on.map_err(|e| format!("{name}: {e}"))?
            - q_off.map_err(|e| format!("{name}: {e}"))?)
        .abs();
        ensure!(
            diff <= 0.02,
            "{name}: 4-thread modularity differs by {diff}"
        );
        worst = worst.max(diff);
    }
    Ok(format!(
        "1-thread labels identical, 4-thread max |dQ| = {worst:.2e}"
    ))
}

/// Strict mode starting from singleton labels merges planted blocks almost
/// completely (the smallest ids win every first-sweep tie), so the strict
/// comparison is near zero on both sides. The non-strict comparison is the
/// one with teeth; its reference must find real structure.
fn parallel_quality() -> Check {
    let mut worst = 0.0f64;
    let mut summary = Vec::new();
    for mode in [TieBreak::Strict, TieBreak::NonStrict] {
        let mut qs = Vec::new();
        for seed in [1, 2, 3] {
            let g = planted_partition(10_000, 20, 0.02, 0.0002, seed)
                .unwrap()
                .to_graph();
            let config = LpaConfig::default().with_tie_break(mode);
            let reference = sequential_reference_lpa(&g, &config.clone().with_threads(1));
            let q_ref = modularity(&g, reference.assignment.labels()).unwrap();
            if mode == TieBreak::NonStrict {
                ensure!(
                    q_ref >= 0.5,
                    "seed {seed}: non-strict reference found no structure (Q = {q_ref:.4})"
                );
            }
            qs.push(format!("{q_ref:.3}"));
            for run in 0..5 {
                let r = lpa(&g, &config.clone().with_threads(4)).unwrap();
                let q = modularity(&g, r.assignment.labels()).unwrap();
                let diff = (q - q_ref).abs();
                ensure!(
                    diff <= 0.05,
                    "{mode:?} seed {seed} run {run}: Q = {q:.4} vs reference {q_ref:.4}"
                );
                worst = worst.max(diff);
            }
        }
        summary.push(format!("{mode:?} reference Q {}", qs.join("/")));
    }
    Ok(format!(
        "3 instances x 5 runs per mode, {}, max |dQ| = {worst:.2e}",
        summary.join(", ")
    ))
}

fn strong_scaling() -> Outcome {
    let start = Instant::now();
    let g = planted_partition(100_000, 20, 0.004, 0.00001, 42)
        .unwrap()
        .to_graph();
    if g.num_arcs() < 2_000_000 {
        return Outcome::Fail(format!("graph has only {} arcs", g.num_arcs()));
    }
    let recs = match scale(&g, "planted-100000", &LpaConfig::default(), &[1, 4], 5) {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let speedup = recs[1].speedup.unwrap_or(0.0);
    let elapsed = start.elapsed();
    let detail = format!(
        "{} arcs, 1 thread {:.3}s, 4 threads {:.3}s, speedup {speedup:.2}x, {elapsed:.1?}",
        g.num_arcs(),
        recs[0].wall_time_seconds.geomean,
        recs[1].wall_time_seconds.geomean
    );
    let cores = hardware_threads();
    if cores < 4 {
        return Outcome::NotEvaluated(format!(
            "needs >= 4 cores, found {cores}; measured {detail}"
        ));
    }
    if speedup >= 1.5 && elapsed < Duration::from_secs(300) {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn scale_invariance(corpus: &[(String, Graph)]) -> Check {
    for (name, g) in corpus {
        let w = g.weights().iter().map(|w| w * 1e3).collect();
        let h = Graph::from_csr(g.offsets().to_vec(), g.targets().to_vec(), w).unwrap();
        let a = lpa(g, &strict_serial()).unwrap();
        let b = lpa(&h, &strict_serial()).unwrap();
        ensure!(
            a.assignment == b.assignment,
            "{name}: labels differ after scaling"
        );
    }
    Ok(format!("{} graphs unchanged", corpus.len()))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (
            "modularity oracle equivalence",
            Box::new(|| modularity_oracle_equivalence().into_outcome()),
        ),
        (
            "accumulator equivalence",
            Box::new(|| accumulator_equivalence().into_outcome()),
        ),
        (
            "determinism",
            Box::new(|| determinism(&corpus).into_outcome()),
        ),
        (
            "planted partition recovery",
            Box::new(|| planted_recovery().into_outcome()),
        ),
        (
            "convergence contract",
            Box::new(|| convergence_contract(&corpus).into_outcome()),
        ),
        (
            "pruning neutrality",
            Box::new(|| pruning_neutrality(&corpus).into_outcome()),
        ),
        (
            "parallel quality",
            Box::new(|| parallel_quality().into_outcome()),
        ),
        ("strong scaling", Box::new(strong_scaling)),
        (
            "tie-break scale invariance",
            Box::new(|| scale_invariance(&corpus).into_outcome()),
        ),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(check)) {
            Ok(Outcome::Pass(d)) => format!("PASS           {}. {name}: {d}", i + 1),
            Ok(Outcome::NotEvaluated(d)) => format!("NOT EVALUATED  {}. {name}: {d}", i + 1),
            Ok(Outcome::Fail(d)) => {
                failed += 1;
                format!("FAIL           {}. {name}: {d}", i + 1)
            }
            Err(_) => {
                failed += 1;
                format!("FAIL           {}. {name}: panicked", i + 1)
            }
        };
        println!("{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

trait IntoOutcome {
    fn into_outcome(self) -> Outcome;
}

impl IntoOutcome for Check {
    fn into_outcome(self) -> Outcome {
        match self {
            Ok(d) => Outcome::Pass(d),
            Err(d) => Outcome::Fail(d),
        }
    }
}
