use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use labelprop::bench::{self, BenchError};
use labelprop::io::{self, EdgeListOptions, Format};
use labelprop::membership::write_membership;
use labelprop::record::{to_json_line, TieBreakName};
use labelprop::synth::{SyntheticSpec, DEFAULT_SEED};
use labelprop::LoadError;
use labelprop_core::{Graph, LpaConfig};

#[derive(Parser)]
#[command(
    name = "labelprop",
    version,
    about = "Parallel label propagation community detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect communities once and print a run record.
    Run(RunArgs),
    /// Repeat detection and print aggregate timings and modularity.
    Bench(BenchArgs),
    /// Benchmark at several thread counts and report speedups.
    Scale(ScaleArgs),
    /// Write a synthetic graph with a planted partition.
    Generate(GenerateArgs),
    /// Convert an input graph to the binary CSR cache format.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Mtx,
    Edgelist,
    CsrBin,
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Edge list has a weight column.
    #[arg(long)]
    weighted: bool,
    /// Add reverse arcs to an edge list (for directed inputs).
    #[arg(long)]
    symmetrize: bool,
    /// Edge list vertex ids start at 1.
    #[arg(long)]
    one_indexed: bool,
    /// Declared vertex count for edge lists.
    #[arg(long)]
    num_vertices: Option<usize>,
    /// Name used in records; defaults to the input file stem.
    #[arg(long)]
    name: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<(Graph, String), Failure> {
        let format = match self.format {
            Some(FormatArg::Mtx) => Format::Mtx,
            Some(FormatArg::Edgelist) => Format::EdgeList,
            Some(FormatArg::CsrBin) => Format::CsrBin,
            None => Format::from_path(&self.input),
        };
        let options = EdgeListOptions {
            weighted: self.weighted,
            one_indexed: self.one_indexed,
            symmetrize: self.symmetrize,
            num_vertices: self.num_vertices,
        };
        let g = io::load_graph(&self.input, format, &options)
            .map_err(|e| load_failure(&self.input, e))?;
        let name = self.name.clone().unwrap_or_else(|| {
            self.input
                .file_stem()
                .map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
        });
        Ok((g, name))
    }
}

#[derive(Args)]
struct LpaArgs {
    #[arg(long, default_value_t = LpaConfig::DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long = "max-iters", default_value_t = LpaConfig::DEFAULT_MAX_ITERATIONS)]
    max_iterations: usize,
    #[arg(long, value_enum, default_value = "strict")]
    tie_break: TieBreakArg,
    /// Shorthand for `--tie-break strict`.
    #[arg(long, conflicts_with = "tie_break")]
    strict: bool,
    #[arg(long)]
    no_pruning: bool,
    #[arg(long, default_value_t = LpaConfig::DEFAULT_CHUNK_SIZE)]
    chunk_size: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieBreakArg {
    Strict,
    Nonstrict,
}

impl LpaArgs {
    fn config(&self, threads: usize) -> Result<LpaConfig, Failure> {
        let tie = match (self.strict, self.tie_break) {
            (true, _) | (_, TieBreakArg::Strict) => TieBreakName::Strict,
            (false, TieBreakArg::Nonstrict) => TieBreakName::Nonstrict,
        };
        let config = LpaConfig {
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
            tie_break: tie.into(),
            pruning: !self.no_pruning,
            chunk_size: self.chunk_size,
            num_threads: threads,
        };
        config
            .validate()
            .map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(config)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    lpa: LpaArgs,
    /// Worker threads; defaults to the hardware parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Write `vertex label` lines here.
    #[arg(long)]
    output_membership: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    lpa: LpaArgs,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
}

#[derive(Args)]
struct ScaleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    lpa: LpaArgs,
    /// Comma-separated thread counts.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64")]
    threads: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    reps: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    CliqueRing,
    Barbell,
    PlantedPartition,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, default_value_t = 8)]
    cliques: usize,
    #[arg(long, default_value_t = 6)]
    clique_size: usize,
    #[arg(long, default_value_t = 1000)]
    vertices: usize,
    #[arg(long, default_value_t = 10)]
    blocks: usize,
    #[arg(long, default_value_t = 0.2)]
    p_in: f64,
    #[arg(long, default_value_t = 0.001)]
    p_out: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// MatrixMarket file to write.
    #[arg(long)]
    output: PathBuf,
    /// Ground-truth membership file to write.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args)]
struct ConvertArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    output: PathBuf,
}

enum Failure {
    Usage(String),
    Load(String),
    Quality(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Load(_) => 2,
            Failure::Quality(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Load(m) | Failure::Quality(m) => m,
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Config(e) => Failure::Usage(e.to_string()),
            BenchError::Usage(m) => Failure::Usage(m),
            BenchError::Quality(e) => Failure::Quality(e.to_string()),
        }
    }
}

fn load_failure(path: &Path, e: LoadError) -> Failure {
    Failure::Load(format!("{}: {e}", path.display()))
}

fn write_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Load(format!("{}: {e}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| write_failure(path, e))
}

fn resolve_threads(requested: Option<usize>) -> usize {
    let t = requested.unwrap_or_else(bench::hardware_threads);
    warn_oversubscription(t);
    t
}

fn warn_oversubscription(t: usize) {
    let hw = bench::hardware_threads();
    if t > hw {
        eprintln!("warning: {t} threads requested but only {hw} hardware threads available");
    }
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let (g, name) = args.input.load()?;
    let config = args.lpa.config(resolve_threads(args.threads))?;
    let outcome = bench::run_once(&g, &name, &config).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(path) = &args.output_membership {
        let mut w = create(path)?;
        write_membership(&mut w, outcome.result.assignment.labels())
            .and_then(|_| w.flush())
            .map_err(|e| write_failure(path, e))?;
    }
    match outcome.record {
        Ok(rec) => {
            println!("{}", to_json_line(&rec));
            Ok(())
        }
        Err(e) => Err(Failure::Quality(e.to_string())),
    }
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let (g, name) = args.input.load()?;
    let config = args.lpa.config(resolve_threads(args.threads))?;
    let rec = bench::bench(&g, &name, &config, args.reps)?;
    println!("{}", to_json_line(&rec));
    Ok(())
}

fn cmd_scale(args: ScaleArgs) -> Result<(), Failure> {
    if args.threads.contains(&0) {
        return Err(Failure::Usage("thread counts must be at least 1".into()));
    }
    let (g, name) = args.input.load()?;
    let config = args.lpa.config(1)?;
    for &t in &args.threads {
        warn_oversubscription(t);
    }
    for rec in bench::scale(&g, &name, &config, &args.threads, args.reps)? {
        println!("{}", to_json_line(&rec));
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let spec = match args.kind {
        KindArg::CliqueRing => SyntheticSpec::CliqueRing {
            cliques: args.cliques,
            clique_size: args.clique_size,
        },
        KindArg::Barbell => SyntheticSpec::Barbell {
            clique_size: args.clique_size,
        },
        KindArg::PlantedPartition => SyntheticSpec::PlantedPartition {
            vertices: args.vertices,
            blocks: args.blocks,
            p_in: args.p_in,
            p_out: args.p_out,
            seed: args.seed,
        },
    };
    let planted = spec.generate().map_err(|e| Failure::Usage(e.to_string()))?;
    let mut w = create(&args.output)?;
    planted
        .write_mtx(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| write_failure(&args.output, e))?;
    if let Some(path) = &args.truth {
        let mut w = create(path)?;
        planted
            .write_truth(&mut w)
            .and_then(|_| w.flush())
            .map_err(|e| write_failure(path, e))?;
    }
    Ok(())
}

fn cmd_convert(args: ConvertArgs) -> Result<(), Failure> {
    let (g, _) = args.input.load()?;
    io::save_csr_bin(&args.output, &g).map_err(|e| load_failure(&args.output, e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Scale(a) => cmd_scale(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Convert(a) => cmd_convert(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
