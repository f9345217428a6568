//! `mdbo` command-line tool: benchmark experiments, clustering runs and a
//! listing of the available benchmarks and optimizers.
//!
//! Settings are resolved as flags over `--config` file over defaults. Every
//! run writes `manifest.json`, which can be passed back as `--config` to
//! reproduce the outputs exactly.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use mdbo_core::clustering::{
    self, accuracy, cluster_optimize, kmeans_baseline, normalize_minmax, synthetic_blobs, ClusterMetrics, Dataset,
};
use mdbo_core::harness::write_json;
use mdbo_core::{derive_seed, list_benchmarks, run_experiment, Algorithm, BenchmarkId, ExperimentPlan};

use config::{BenchManifest, ClusterConfig, ClusterManifest, ClusterSeeds, Manifest};

#[derive(Parser)]
#[command(name = "mdbo", version, about = "Military dog based optimizer: benchmarks, statistics and clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run optimizers over benchmark functions and export statistics.
    Bench(BenchArgs),
    /// Cluster a CSV file or synthetic data and compare with k-means.
    Cluster(ClusterArgs),
    /// Print the benchmark ids and optimizer names.
    List,
}

#[derive(Args)]
struct Common {
    /// Base seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads; 0 uses every core
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// JSON config in manifest form; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Overrides shared by the optimizers. `m`, `iterations` and `keep` apply to
/// all five.
#[derive(Args)]
struct ParamArgs {
    /// Population size [default: 50]
    #[arg(long)]
    m: Option<usize>,
    /// Iterations per run [default: 500]
    #[arg(long)]
    iterations: Option<usize>,
    /// Elites kept between generations [default: 2]
    #[arg(long)]
    keep: Option<usize>,
    /// MDBO sniff copy probability [default: 0.5]
    #[arg(long)]
    p_m: Option<f64>,
    /// MDBO smog/vegetation constant [default: 0.25]
    #[arg(long)]
    alpha: Option<f64>,
    /// MDBO wind constant [default: 0.25]
    #[arg(long)]
    w: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    params: ParamArgs,
    /// Comma-separated optimizers [default: all]
    #[arg(long, value_delimiter = ',')]
    algorithms: Option<Vec<Algorithm>>,
    /// Comma-separated benchmark ids such as F1,F15 [default: all]
    #[arg(long, value_delimiter = ',')]
    functions: Option<Vec<BenchmarkId>>,
    /// Runs per (optimizer, benchmark) [default: 15]
    #[arg(long)]
    runs: Option<usize>,
    /// Problem dimension [default: 30]
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    params: ParamArgs,
    /// CSV with a header row and an optional final `label` column
    #[arg(long, conflicts_with = "synthetic")]
    input: Option<String>,
    /// Synthetic data, e.g. blobs:k=2,n=6000,d=11[,sigma=0.05]
    #[arg(long)]
    synthetic: Option<String>,
    /// Number of clusters [default: 2]
    #[arg(long)]
    k: Option<usize>,
    /// Optimizer [default: mdbo]
    #[arg(long)]
    algorithm: Option<Algorithm>,
    /// Lloyd iteration cap for k-means [default: 100]
    #[arg(long)]
    max_iters: Option<usize>,
}

/// Distinguishes bad invocations (exit 1) from failures while running
/// (exit 2).
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn runtime<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Runtime(e.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Cluster(args) => cluster(args),
        Command::List => {
            list();
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn list() {
    println!("benchmarks:");
    for b in list_benchmarks() {
        println!("{:<4} {:<32} [{}, {}] {}", b.id.to_string(), b.name, b.lower, b.upper, b.modality);
    }
    println!("optimizers:");
    for a in Algorithm::ALL {
        println!("{a}");
    }
}

fn apply_params(settings: &mut mdbo_core::OptimizerSettings, p: &ParamArgs) {
    if let Some(m) = p.m {
        settings.mdbo.m = m;
        settings.baseline.m = m;
    }
    if let Some(t) = p.iterations {
        settings.mdbo.iterations = t;
        settings.baseline.iterations = t;
    }
    if let Some(keep) = p.keep {
        settings.mdbo.keep = keep;
        settings.baseline.keep = keep;
    }
    if let Some(v) = p.p_m {
        settings.mdbo.p_m = v;
    }
    if let Some(v) = p.alpha {
        settings.mdbo.alpha = v;
    }
    if let Some(v) = p.w {
        settings.mdbo.w = v;
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(runtime)
}

fn prepare_out(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(runtime)
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let mut plan = match &args.common.config {
        Some(path) => config::load::<ExperimentPlan>(path, "bench").map_err(usage)?,
        None => ExperimentPlan::default(),
    };
    if let Some(seed) = args.common.seed {
        plan.base_seed = seed;
    }
    if let Some(a) = args.algorithms {
        plan.algorithms = a;
    }
    if let Some(f) = args.functions {
        plan.benchmarks = f;
    }
    if let Some(r) = args.runs {
        plan.runs = r;
    }
    if let Some(d) = args.dim {
        plan.dim = d;
    }
    apply_params(&mut plan.settings, &args.params);
    plan.validate().map_err(usage)?;

    let out = &args.common.out;
    prepare_out(out)?;
    let experiment = thread_pool(args.common.jobs)?.install(|| run_experiment(&plan)).map_err(runtime)?;
    experiment.export(out).map_err(runtime)?;
    let manifest: BenchManifest = Manifest { command: "bench".into(), seeds: plan.run_seeds(), config: plan };
    write_json(&manifest, &out.join("manifest.json")).map_err(runtime)?;

    for c in &experiment.table.cells {
        println!("{} {} mean {:e} std {:e}", c.algorithm, c.benchmark, c.summary.mean, c.summary.std);
    }
    eprintln!("wrote results to {}", out.display());
    Ok(())
}

fn cluster(args: ClusterArgs) -> Result<(), Failure> {
    let mut cfg = match &args.common.config {
        Some(path) => config::load::<ClusterConfig>(path, "cluster").map_err(usage)?,
        None => ClusterConfig::default(),
    };
    if let Some(seed) = args.common.seed {
        cfg.seed = seed;
    }
    if args.input.is_some() {
        cfg.input = args.input;
        cfg.synthetic = None;
    }
    if args.synthetic.is_some() {
        cfg.synthetic = args.synthetic;
        cfg.input = None;
    }
    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some(a) = args.algorithm {
        cfg.algorithm = a;
    }
    if let Some(t) = args.max_iters {
        cfg.max_iters = t;
    }
    apply_params(&mut cfg.settings, &args.params);
    if cfg.k == 0 {
        return Err(usage(anyhow!("--k must be at least 1")));
    }
    cfg.settings.validate(cfg.algorithm).map_err(usage)?;

    let seeds = ClusterSeeds {
        data: derive_seed(cfg.seed, "data", "cluster", 0),
        optimizer: derive_seed(cfg.seed, cfg.algorithm.name(), "cluster", 0),
        kmeans: derive_seed(cfg.seed, "kmeans", "cluster", 0),
    };
    let raw = match (&cfg.input, &cfg.synthetic) {
        (Some(path), None) => {
            Dataset::from_csv_path(Path::new(path)).with_context(|| format!("loading {path}")).map_err(runtime)?
        }
        (None, Some(spec)) => {
            let b = config::parse_blobs(spec).map_err(usage)?;
            synthetic_blobs(b.k, b.n, b.d, b.sigma, seeds.data).map_err(usage)?.0
        }
        _ => return Err(usage(anyhow!("one of --input FILE or --synthetic SPEC is required"))),
    };
    if cfg.k > raw.len() {
        return Err(usage(anyhow!("--k {} exceeds the {} data points", cfg.k, raw.len())));
    }
    let data = normalize_minmax(&raw);

    let out = &args.common.out;
    prepare_out(out)?;
    let pool = thread_pool(args.common.jobs)?;
    let (found, _) = pool
        .install(|| cluster_optimize(&data, cfg.k, cfg.algorithm, &cfg.settings, seeds.optimizer))
        .map_err(runtime)?;
    let km = pool.install(|| kmeans_baseline(&data, cfg.k, seeds.kmeans, cfg.max_iters)).map_err(runtime)?;

    let labels = data.labels.as_deref();
    let score = |a| labels.map(|l| accuracy(a, Some(l))).transpose();
    let metrics = vec![
        ClusterMetrics {
            method: cfg.algorithm.name().into(),
            fitness: found.fitness,
            accuracy: score(&found.assignment).map_err(runtime)?,
        },
        ClusterMetrics {
            method: "kmeans".into(),
            fitness: km.fitness,
            accuracy: score(&km.assignment).map_err(runtime)?,
        },
    ];
    clustering::write_assignment(&found.assignment, &out.join("assignment.csv")).map_err(runtime)?;
    clustering::write_centroids(&found.centroids, &data.feature_names, &out.join("centroids.csv")).map_err(runtime)?;
    clustering::write_metrics(&metrics, &out.join("metrics.csv")).map_err(runtime)?;
    let manifest: ClusterManifest = Manifest { command: "cluster".into(), config: cfg, seeds };
    write_json(&manifest, &out.join("manifest.json")).map_err(runtime)?;

    for m in &metrics {
        match m.accuracy {
            Some(a) => println!("{}: fitness {:e} accuracy {a:.4}", m.method, m.fitness),
            None => println!("{}: fitness {:e}", m.method, m.fitness),
        }
    }
    eprintln!("wrote results to {}", out.display());
    Ok(())
}
