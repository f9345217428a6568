//! Military dog based optimizer (MDBO) with four baseline metaheuristics,
//! a seventeen-function benchmark suite, a statistical evaluation harness and
//! a centroid-clustering mode.
//!
//! Every optimizer minimizes an [`Objective`] over a [`SearchSpace`] and
//! returns a [`RunTrace`]. Runs are reproducible from their seed.

pub mod baselines;
pub mod benchmark;
pub mod clustering;
pub mod error;
pub mod harness;
pub mod mdbo;
pub mod objective;
pub mod rng;
pub mod space;
pub mod stats;
pub mod trace;

pub use baselines::{run_algorithm, Algorithm, BaselineParams, OptimizerSettings};
pub use benchmark::{list_benchmarks, Benchmark, BenchmarkId, Modality};
pub use clustering::{
    accuracy, cluster_optimize, kmeans_baseline, normalize_minmax, sse_fitness, Assignment, CentroidSet, ClusterResult,
    Dataset,
};
pub use error::{Error, Result};
pub use harness::{run_experiment, Experiment, ExperimentPlan, ResultTable};
pub use mdbo::{apply_elitism, bark_step, initialize_squad, mdbo_run, sniff_step, Dog, MdboParams, Squad};
pub use objective::Objective;
pub use rng::{derive_seed, RngStream, SeededRng};
pub use space::SearchSpace;
pub use stats::{boxplot_stats, significance_mark, wilcoxon_rank_sum, Mark};
pub use trace::RunTrace;
