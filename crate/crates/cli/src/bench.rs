//! Single runs, repeated benchmarks and thread-count sweeps.

use labelprop_core::{
    partition_stats, ConfigError, Graph, LpaConfig, LpaEngine, LpaResult, QualityError,
};
use thiserror::Error;

use crate::record::{
    timestamp_ms, BenchRecord, ModularitySummary, RunRecord, WallTimeSummary, BENCH_SCHEMA,
    RUN_SCHEMA, SCALE_SCHEMA,
};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Quality(#[from] QualityError),
    #[error("{0}")]
    Usage(String),
}

/// Labels from one run, and its record when modularity is defined.
#[derive(Debug)]
pub struct RunOutcome {
    pub result: LpaResult,
    pub record: Result<RunRecord, QualityError>,
}

fn record_for(
    g: &Graph,
    name: &str,
    config: &LpaConfig,
    r: &LpaResult,
) -> Result<RunRecord, QualityError> {
    let stats = partition_stats(g, r.assignment.labels())?;
    Ok(RunRecord {
        schema: RUN_SCHEMA.into(),
        graph: name.into(),
        num_vertices: g.num_vertices(),
        num_arcs: g.num_arcs(),
        config: config.into(),
        iterations: r.iterations,
        converged: r.converged,
        delta_history: r.delta_history.clone(),
        wall_time_seconds: r.wall_time,
        modularity: stats.modularity,
        num_communities: stats.num_communities,
        timestamp: timestamp_ms(),
    })
}

pub fn run_once(g: &Graph, name: &str, config: &LpaConfig) -> Result<RunOutcome, ConfigError> {
    let result = LpaEngine::new(config.clone())?.run(g);
    let record = record_for(g, name, config, &result);
    Ok(RunOutcome { result, record })
}

pub fn geometric_mean(xs: &[f64]) -> f64 {
    (xs.iter().map(|x| x.ln()).sum::<f64>() / xs.len() as f64).exp()
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// Runs `repetitions` times on one engine. Wall times are aggregated by
/// geometric mean and modularity by arithmetic mean.
pub fn bench(
    g: &Graph,
    name: &str,
    config: &LpaConfig,
    repetitions: usize,
) -> Result<BenchRecord, BenchError> {
    if repetitions == 0 {
        return Err(BenchError::Usage("repetitions must be at least 1".into()));
    }
    let mut engine = LpaEngine::new(config.clone())?;
    let mut runs = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let r = engine.run(g);
        runs.push(record_for(g, name, config, &r)?);
    }
    let times: Vec<f64> = runs.iter().map(|r| r.wall_time_seconds).collect();
    let qs: Vec<f64> = runs.iter().map(|r| r.modularity).collect();
    let (tmin, tmax) = min_max(&times);
    let (qmin, qmax) = min_max(&qs);
    Ok(BenchRecord {
        schema: BENCH_SCHEMA.into(),
        graph: name.into(),
        num_vertices: g.num_vertices(),
        num_arcs: g.num_arcs(),
        config: config.into(),
        repetitions,
        wall_time_seconds: WallTimeSummary {
            geomean: geometric_mean(&times),
            min: tmin,
            max: tmax,
            samples: times,
        },
        modularity: ModularitySummary {
            mean: qs.iter().sum::<f64>() / qs.len() as f64,
            min: qmin,
            max: qmax,
            samples: qs,
        },
        iterations: runs.iter().map(|r| r.iterations).collect(),
        num_communities: runs.iter().map(|r| r.num_communities).collect(),
        speedup: None,
        timestamp: timestamp_ms(),
    })
}

/// One benchmark per thread count, each with a speedup relative to the
/// first entry's geometric-mean wall time.
pub fn scale(
    g: &Graph,
    name: &str,
    config: &LpaConfig,
    threads: &[usize],
    repetitions: usize,
) -> Result<Vec<BenchRecord>, BenchError> {
    if threads.is_empty() {
        return Err(BenchError::Usage("thread list must not be empty".into()));
    }
    let mut out: Vec<BenchRecord> = Vec::with_capacity(threads.len());
    for &t in threads {
        let mut rec = bench(g, name, &config.clone().with_threads(t), repetitions)?;
        let baseline = out.first().map_or(rec.wall_time_seconds.geomean, |b| {
            b.wall_time_seconds.geomean
        });
        rec.schema = SCALE_SCHEMA.into();
        rec.speedup = Some(baseline / rec.wall_time_seconds.geomean);
        out.push(rec);
    }
    Ok(out)
}

pub fn hardware_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
