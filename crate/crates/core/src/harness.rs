//! Repeated-run experiments over (algorithm, benchmark) grids and the CSV
//! exports derived from them.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{run_algorithm, Algorithm, OptimizerSettings};
use crate::benchmark::BenchmarkId;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, SeededRng};
use crate::stats::{boxplot_stats, median, significance_mark, summarize, wilcoxon_rank_sum, BoxPlot, Mark, Summary};
use crate::trace::RunTrace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    pub algorithms: Vec<Algorithm>,
    pub benchmarks: Vec<BenchmarkId>,
    pub runs: usize,
    pub dim: usize,
    pub base_seed: u64,
    pub settings: OptimizerSettings,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            benchmarks: BenchmarkId::ALL.to_vec(),
            runs: 15,
            dim: 30,
            base_seed: 0,
            settings: OptimizerSettings::default(),
        }
    }
}

/// Seed of one run, as recorded in manifests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSeed {
    pub algorithm: Algorithm,
    pub benchmark: BenchmarkId,
    pub run: usize,
    pub seed: u64,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidConfig("dim must be at least 1".into()));
        }
        if self.algorithms.is_empty() || self.benchmarks.is_empty() {
            return Err(Error::InvalidConfig("at least one algorithm and one benchmark are required".into()));
        }
        for &a in &self.algorithms {
            self.settings.validate(a)?;
        }
        Ok(())
    }

    pub fn seed_for(&self, algorithm: Algorithm, benchmark: BenchmarkId, run: usize) -> u64 {
        derive_seed(self.base_seed, algorithm.name(), &benchmark.to_string(), run)
    }

    /// Every run of the plan in output order.
    pub fn run_seeds(&self) -> Vec<RunSeed> {
        let mut seeds = Vec::with_capacity(self.algorithms.len() * self.benchmarks.len() * self.runs);
        for &algorithm in &self.algorithms {
            for &benchmark in &self.benchmarks {
                for run in 0..self.runs {
                    seeds.push(RunSeed { algorithm, benchmark, run, seed: self.seed_for(algorithm, benchmark, run) });
                }
            }
        }
        seeds
    }

    /// The optimizer the significance marks are relative to: MDBO when
    /// present, otherwise the first listed algorithm.
    pub fn reference(&self) -> Algorithm {
        if self.algorithms.contains(&Algorithm::Mdbo) {
            Algorithm::Mdbo
        } else {
            self.algorithms[0]
        }
    }
}

/// Statistics of one (algorithm, benchmark) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub benchmark: BenchmarkId,
    pub summary: Summary,
    /// Final best fitness of every run, in run order.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub cells: Vec<Cell>,
}

impl ResultTable {
    pub fn cell(&self, algorithm: Algorithm, benchmark: BenchmarkId) -> Option<&Cell> {
        self.cells.iter().find(|c| c.algorithm == algorithm && c.benchmark == benchmark)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonRow {
    pub benchmark: BenchmarkId,
    pub reference: Algorithm,
    pub opponent: Algorithm,
    pub p_value: f64,
    pub mark: Mark,
}

#[derive(Debug, Clone)]
pub struct Experiment {
    pub plan: ExperimentPlan,
    pub table: ResultTable,
    /// Traces keyed by (algorithm, benchmark), in run order.
    pub traces: BTreeMap<(Algorithm, BenchmarkId), Vec<RunTrace>>,
}

/// Executes every run of the plan. Runs are distributed over the current
/// rayon pool; the result does not depend on scheduling.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<Experiment> {
    run_experiment_with(plan, |id, x| id.evaluate(x))
}

/// As [`run_experiment`] with a substitute objective; each benchmark still
/// supplies its box.
pub fn run_experiment_with<F>(plan: &ExperimentPlan, objective: F) -> Result<Experiment>
where
    F: Fn(BenchmarkId, &[f64]) -> f64 + Sync,
{
    plan.validate()?;
    let jobs = plan.run_seeds();
    let outcomes: Vec<RunTrace> = jobs
        .par_iter()
        .map(|job| {
            let space = job.benchmark.describe().space(plan.dim)?;
            let mut rng = SeededRng::new(job.seed);
            let f = |x: &[f64]| objective(job.benchmark, x);
            run_algorithm(job.algorithm, &plan.settings, &space, &f, &mut rng)
        })
        .collect::<Result<_>>()?;

    let mut traces: BTreeMap<(Algorithm, BenchmarkId), Vec<RunTrace>> = BTreeMap::new();
    for (job, trace) in jobs.iter().zip(outcomes) {
        traces.entry((job.algorithm, job.benchmark)).or_default().push(trace);
    }

    let mut cells = Vec::new();
    for &algorithm in &plan.algorithms {
        for &benchmark in &plan.benchmarks {
            let values: Vec<f64> = traces[&(algorithm, benchmark)].iter().map(|t| t.best_mdsi).collect();
            cells.push(Cell { algorithm, benchmark, summary: summarize(&values)?, values });
        }
    }
    Ok(Experiment { plan: plan.clone(), table: ResultTable { cells }, traces })
}

impl Experiment {
    /// Rank-sum comparison of the reference optimizer against every other
    /// algorithm of the plan, per benchmark.
    pub fn wilcoxon(&self) -> Result<Vec<WilcoxonRow>> {
        let reference = self.plan.reference();
        let mut rows = Vec::new();
        for &benchmark in &self.plan.benchmarks {
            let ours = self.table.cell(reference, benchmark).expect("cell exists for every plan entry");
            for &opponent in self.plan.algorithms.iter().filter(|&&a| a != reference) {
                let theirs = self.table.cell(opponent, benchmark).expect("cell exists for every plan entry");
                let p_value = wilcoxon_rank_sum(&ours.values, &theirs.values)?;
                let mark = significance_mark(p_value, ours.summary.mean, theirs.summary.mean).mark;
                rows.push(WilcoxonRow { benchmark, reference, opponent, p_value, mark });
            }
        }
        Ok(rows)
    }

    /// Convergence table of one cell: iteration, one column per run, and the
    /// cross-run median.
    pub fn convergence(&self, algorithm: Algorithm, benchmark: BenchmarkId) -> Result<Vec<Vec<f64>>> {
        let traces = self
            .traces
            .get(&(algorithm, benchmark))
            .ok_or_else(|| Error::InvalidConfig(format!("no runs for {algorithm} on {benchmark}")))?;
        let iterations = traces.iter().map(|t| t.best_per_iteration.len()).min().unwrap_or(0);
        (0..iterations)
            .map(|it| {
                let column: Vec<f64> = traces.iter().map(|t| t.best_per_iteration[it]).collect();
                let mut row = Vec::with_capacity(column.len() + 2);
                row.push((it + 1) as f64);
                row.extend_from_slice(&column);
                row.push(median(&column)?);
                Ok(row)
            })
            .collect()
    }

    pub fn boxplots(&self) -> Result<Vec<(Algorithm, BenchmarkId, BoxPlot)>> {
        self.table.cells.iter().map(|c| Ok((c.algorithm, c.benchmark, boxplot_stats(&c.values)?))).collect()
    }

    /// Writes `results.csv`, `summary.csv`, `wilcoxon.csv`, `boxplot.csv`
    /// and one `convergence_<alg>_<fn>.csv` per cell into `dir`.
    pub fn export(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        write_results(&self.table, &dir.join("results.csv"))?;
        write_summary(&self.table, &dir.join("summary.csv"))?;
        write_wilcoxon(&self.wilcoxon()?, &dir.join("wilcoxon.csv"))?;
        write_boxplots(&self.boxplots()?, &dir.join("boxplot.csv"))?;
        for &algorithm in &self.plan.algorithms {
            for &benchmark in &self.plan.benchmarks {
                let path = dir.join(format!("convergence_{algorithm}_{benchmark}.csv"));
                write_convergence(&self.convergence(algorithm, benchmark)?, self.plan.runs, &path)?;
            }
        }
        Ok(())
    }
}

/// Shortest round-trip scientific notation.
pub fn fmt_float(v: f64) -> String {
    format!("{v:e}")
}

pub(crate) fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::WriterBuilder::new().flexible(true).from_writer(BufWriter::new(File::create(path)?)))
}

pub fn write_results(table: &ResultTable, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["algorithm", "benchmark", "run", "final_best"])?;
    for c in &table.cells {
        for (run, &v) in c.values.iter().enumerate() {
            w.write_record([c.algorithm.name(), &c.benchmark.to_string(), &run.to_string(), &fmt_float(v)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary(table: &ResultTable, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["algorithm", "benchmark", "mean", "std", "best", "worst"])?;
    for c in &table.cells {
        let s = &c.summary;
        w.write_record([
            c.algorithm.name().to_string(),
            c.benchmark.to_string(),
            fmt_float(s.mean),
            fmt_float(s.std),
            fmt_float(s.best),
            fmt_float(s.worst),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_wilcoxon(rows: &[WilcoxonRow], path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["benchmark", "opponent", "p_value", "mark"])?;
    for r in rows {
        w.write_record([r.benchmark.to_string(), r.opponent.to_string(), fmt_float(r.p_value), r.mark.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_boxplots(rows: &[(Algorithm, BenchmarkId, BoxPlot)], path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["algorithm", "benchmark", "min", "q1", "median", "q3", "max", "outliers"])?;
    for (algorithm, benchmark, b) in rows {
        let mut record = vec![algorithm.to_string(), benchmark.to_string(), fmt_float(b.min), fmt_float(b.q1)];
        record.extend([fmt_float(b.median), fmt_float(b.q3), fmt_float(b.max)]);
        record.extend(b.outliers.iter().map(|&v| fmt_float(v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_convergence(rows: &[Vec<f64>], runs: usize, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec!["iteration".to_string()];
    header.extend((0..runs).map(|r| format!("run_{r}")));
    header.push("median".into());
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![format!("{}", row[0] as u64)];
        record.extend(row[1..].iter().map(|&v| fmt_float(v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes pretty-printed JSON followed by a newline.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}
