//! Centroid clustering driven by any of the optimizers.
//!
//! A candidate position encodes `k` centroids row-major; its fitness is the
//! sum of squared Euclidean distances from every point to its nearest
//! centroid. A Lloyd k-means baseline and label-based accuracy scoring are
//! provided for comparison.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{run_algorithm, Algorithm, OptimizerSettings};
use crate::error::{Error, Result};
use crate::harness::{fmt_float, writer};
use crate::rng::{RngStream, SeededRng};
use crate::space::SearchSpace;
use crate::trace::RunTrace;

/// Rows per partial sum in [`sse_fitness`]. Partial sums are combined in
/// chunk order, so the total does not depend on thread scheduling.
const SSE_CHUNK: usize = 512;

/// Up to this many clusters/labels the accuracy mapping is found by
/// exhaustive permutation.
pub const EXHAUSTIVE_MAPPING_LIMIT: usize = 8;

/// An `n x d` feature matrix with optional class labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    dim: usize,
    values: Vec<f64>,
    /// Class index per row into `label_names`.
    pub labels: Option<Vec<usize>>,
    pub label_names: Vec<String>,
    pub feature_names: Vec<String>,
}

impl Dataset {
    pub fn new(rows: Vec<Vec<f64>>, labels: Option<Vec<usize>>) -> Result<Self> {
        let dim = rows.first().map(|r| r.len()).ok_or(Error::EmptySample)?;
        if dim == 0 {
            return Err(Error::InvalidConfig("dataset needs at least one feature".into()));
        }
        let mut values = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: row.len() });
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig(format!("row {i}, feature {j} is not finite")));
            }
            values.extend_from_slice(row);
        }
        let label_names = match &labels {
            Some(l) => {
                if l.len() != rows.len() {
                    return Err(Error::DimensionMismatch { expected: rows.len(), actual: l.len() });
                }
                let classes = l.iter().max().map_or(0, |m| m + 1);
                (0..classes).map(|c| c.to_string()).collect()
            }
            None => Vec::new(),
        };
        let feature_names = (0..dim).map(|j| format!("x{j}")).collect();
        Ok(Self { dim, values, labels, label_names, feature_names })
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Per-feature `(min, max)`.
    pub fn column_ranges(&self) -> Vec<(f64, f64)> {
        let mut ranges = vec![(f64::INFINITY, f64::NEG_INFINITY); self.dim];
        for p in self.points() {
            for (r, &v) in ranges.iter_mut().zip(p) {
                r.0 = r.0.min(v);
                r.1 = r.1.max(v);
            }
        }
        ranges
    }

    /// Reads a comma-separated file with a header row. A final column named
    /// `label` holds class labels; every other column must be numeric.
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut csv =
            csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let header: Vec<String> = csv.headers()?.iter().map(str::to_string).collect();
        let has_label = header.last().is_some_and(|h| h.eq_ignore_ascii_case("label"));
        let feature_count = header.len() - usize::from(has_label);
        if feature_count == 0 {
            return Err(Error::MalformedCsv { line: 1, message: "no feature columns".into() });
        }

        let mut rows = Vec::new();
        let mut raw_labels = Vec::new();
        for (k, record) in csv.records().enumerate() {
            let line = k + 2;
            let record = record.map_err(|e| Error::MalformedCsv { line, message: e.to_string() })?;
            if record.len() != header.len() {
                return Err(Error::MalformedCsv {
                    line,
                    message: format!("expected {} fields, found {}", header.len(), record.len()),
                });
            }
            let mut row = Vec::with_capacity(feature_count);
            for (j, field) in record.iter().take(feature_count).enumerate() {
                let v: f64 = field.parse().map_err(|_| Error::MalformedCsv {
                    line,
                    message: format!("column `{}`: `{field}` is not a number", header[j]),
                })?;
                if !v.is_finite() {
                    return Err(Error::MalformedCsv { line, message: format!("column `{}` is not finite", header[j]) });
                }
                row.push(v);
            }
            if has_label {
                raw_labels.push(record[feature_count].to_string());
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::MalformedCsv { line: 2, message: "no data rows".into() });
        }

        let (labels, label_names) = if has_label {
            let mut names: Vec<String> = raw_labels.clone();
            names.sort();
            names.dedup();
            let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
            (Some(raw_labels.iter().map(|l| index[l.as_str()]).collect()), names)
        } else {
            (None, Vec::new())
        };
        let mut ds = Self::new(rows, labels)?;
        ds.label_names = label_names;
        ds.feature_names = header[..feature_count].to_vec();
        Ok(ds)
    }
}

/// Per-column min-max scaling to `[0, 1]`; constant columns map to 0.
pub fn normalize_minmax(dataset: &Dataset) -> Dataset {
    let ranges = dataset.column_ranges();
    let mut out = dataset.clone();
    for row in out.values.chunks_exact_mut(dataset.dim) {
        for (v, &(lo, hi)) in row.iter_mut().zip(&ranges) {
            *v = if hi > lo { ((*v - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.0 };
        }
    }
    out
}

/// `k` centroids in `d` dimensions, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentroidSet {
    pub k: usize,
    pub dim: usize,
    pub values: Vec<f64>,
}

impl CentroidSet {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map(|r| r.len()).ok_or(Error::EmptySample)?;
        let mut values = Vec::with_capacity(rows.len() * dim);
        for r in rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: r.len() });
            }
            values.extend_from_slice(r);
        }
        Ok(Self { k: rows.len(), dim, values })
    }

    pub fn centroid(&self, j: usize) -> &[f64] {
        &self.values[j * self.dim..(j + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Index of the nearest centroid to `p`; the lowest index wins ties.
    pub fn nearest(&self, p: &[f64]) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        for (j, c) in self.rows().enumerate() {
            let d2: f64 = p.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum();
            if d2 < best.1 {
                best = (j, d2);
            }
        }
        best
    }
}

pub fn encode(centroids: &CentroidSet) -> Vec<f64> {
    centroids.values.clone()
}

pub fn decode(fsv: &[f64], k: usize, dim: usize) -> Result<CentroidSet> {
    if k == 0 || dim == 0 {
        return Err(Error::InvalidConfig("k and d must be positive".into()));
    }
    if fsv.len() != k * dim {
        return Err(Error::DimensionMismatch { expected: k * dim, actual: fsv.len() });
    }
    Ok(CentroidSet { k, dim, values: fsv.to_vec() })
}

/// Cluster index of every point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub k: usize,
    pub membership: Vec<usize>,
}

pub fn assign(dataset: &Dataset, centroids: &CentroidSet) -> Assignment {
    let membership = dataset.points().map(|p| centroids.nearest(p).0).collect();
    Assignment { k: centroids.k, membership }
}

/// Sum over points of the squared distance to the nearest centroid.
pub fn sse_fitness(dataset: &Dataset, centroids: &CentroidSet) -> Result<f64> {
    if dataset.is_empty() {
        return Err(Error::EmptySample);
    }
    if centroids.dim != dataset.dim {
        return Err(Error::DimensionMismatch { expected: dataset.dim, actual: centroids.dim });
    }
    Ok(sse_unchecked(dataset, centroids))
}

fn sse_unchecked(dataset: &Dataset, centroids: &CentroidSet) -> f64 {
    let partials: Vec<f64> = dataset
        .values
        .par_chunks(SSE_CHUNK * dataset.dim)
        .map(|chunk| chunk.chunks_exact(dataset.dim).map(|p| centroids.nearest(p).1).sum::<f64>())
        .collect();
    partials.iter().sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterResult {
    pub centroids: CentroidSet,
    pub assignment: Assignment,
    pub fitness: f64,
}

impl ClusterResult {
    fn from_centroids(dataset: &Dataset, centroids: CentroidSet) -> Self {
        let fitness = sse_unchecked(dataset, &centroids);
        let assignment = assign(dataset, &centroids);
        Self { centroids, assignment, fitness }
    }
}

fn check_k(dataset: &Dataset, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidConfig("k must be at least 1".into()));
    }
    if dataset.is_empty() {
        return Err(Error::EmptySample);
    }
    if k > dataset.len() {
        return Err(Error::InvalidConfig(format!("k = {k} exceeds the {} data points", dataset.len())));
    }
    Ok(())
}

/// Minimizes the SSE over `[0, 1]^(k d)` with `algorithm`. The dataset is
/// expected to be min-max normalized.
pub fn cluster_optimize(
    dataset: &Dataset,
    k: usize,
    algorithm: Algorithm,
    settings: &OptimizerSettings,
    seed: u64,
) -> Result<(ClusterResult, RunTrace)> {
    check_k(dataset, k)?;
    let dim = dataset.dim;
    let space = SearchSpace::uniform(k * dim, 0.0, 1.0)?;
    let objective = |fsv: &[f64]| {
        let c = CentroidSet { k, dim, values: fsv.to_vec() };
        sse_unchecked(dataset, &c)
    };
    let trace = run_algorithm(algorithm, settings, &space, &objective, &mut SeededRng::new(seed))?;
    let centroids = decode(&trace.best_fsv, k, dim)?;
    Ok((ClusterResult::from_centroids(dataset, centroids), trace))
}

/// Lloyd iterations from `initial` until the assignment stops changing or
/// `max_iters` updates have run. Returns the result and the SSE before each
/// update and after the last one.
pub fn lloyd(dataset: &Dataset, initial: CentroidSet, max_iters: usize) -> Result<(ClusterResult, Vec<f64>)> {
    check_k(dataset, initial.k)?;
    if initial.dim != dataset.dim {
        return Err(Error::DimensionMismatch { expected: dataset.dim, actual: initial.dim });
    }
    let (k, dim) = (initial.k, dataset.dim);
    let mut centroids = initial;
    let mut membership = assign(dataset, &centroids).membership;
    let mut history = vec![sse_unchecked(dataset, &centroids)];

    for _ in 0..max_iters {
        let mut sums = vec![0.0; k * dim];
        let mut counts = vec![0usize; k];
        for (p, &c) in dataset.points().zip(&membership) {
            counts[c] += 1;
            for (s, v) in sums[c * dim..(c + 1) * dim].iter_mut().zip(p) {
                *s += v;
            }
        }
        let mut taken = vec![false; dataset.len()];
        for c in 0..k {
            if counts[c] > 0 {
                for s in &mut sums[c * dim..(c + 1) * dim] {
                    *s /= counts[c] as f64;
                }
            } else {
                // empty cluster: reseed at the point farthest from its centroid
                let far = dataset
                    .points()
                    .enumerate()
                    .filter(|(i, _)| !taken[*i])
                    .map(|(i, p)| (i, centroids.nearest(p).1))
                    .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
                    .0;
                taken[far] = true;
                sums[c * dim..(c + 1) * dim].copy_from_slice(dataset.point(far));
            }
        }
        centroids = CentroidSet { k, dim, values: sums };
        let next = assign(dataset, &centroids).membership;
        history.push(sse_unchecked(dataset, &centroids));
        let settled = next == membership;
        membership = next;
        if settled {
            break;
        }
    }
    Ok((ClusterResult::from_centroids(dataset, centroids), history))
}

/// k-means with `k` distinct data points chosen at random as the initial
/// centroids.
pub fn kmeans_baseline(dataset: &Dataset, k: usize, seed: u64, max_iters: usize) -> Result<ClusterResult> {
    check_k(dataset, k)?;
    let mut rng = SeededRng::new(seed);
    // partial Fisher-Yates over row indices
    let mut rows: Vec<usize> = (0..dataset.len()).collect();
    for i in 0..k {
        let j = i + rng.below(rows.len() - i);
        rows.swap(i, j);
    }
    let initial: Vec<Vec<f64>> = rows[..k].iter().map(|&i| dataset.point(i).to_vec()).collect();
    Ok(lloyd(dataset, CentroidSet::from_rows(&initial)?, max_iters)?.0)
}

/// Mean of every labeled class, in label order.
pub fn class_means(dataset: &Dataset) -> Result<CentroidSet> {
    let labels = dataset.labels.as_ref().ok_or(Error::MissingLabels)?;
    let classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut sums = vec![vec![0.0; dataset.dim]; classes];
    let mut counts = vec![0usize; classes];
    for (p, &l) in dataset.points().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l].iter_mut().zip(p) {
            *s += v;
        }
    }
    let rows: Vec<Vec<f64>> = sums
        .into_iter()
        .zip(&counts)
        .filter(|(_, &n)| n > 0)
        .map(|(s, &n)| s.into_iter().map(|v| v / n as f64).collect())
        .collect();
    CentroidSet::from_rows(&rows)
}

/// Fraction of points whose cluster maps to their label. With at most
/// [`EXHAUSTIVE_MAPPING_LIMIT`] clusters and labels the best one-to-one
/// mapping is used; otherwise each cluster takes its majority label.
pub fn accuracy(assignment: &Assignment, labels: Option<&[usize]>) -> Result<f64> {
    let labels = labels.ok_or(Error::MissingLabels)?;
    if labels.len() != assignment.membership.len() {
        return Err(Error::DimensionMismatch { expected: assignment.membership.len(), actual: labels.len() });
    }
    if labels.is_empty() {
        return Err(Error::EmptySample);
    }
    let clusters = assignment.k.max(assignment.membership.iter().max().map_or(0, |m| m + 1));
    let classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut confusion = vec![vec![0usize; classes]; clusters];
    for (&c, &l) in assignment.membership.iter().zip(labels) {
        confusion[c][l] += 1;
    }
    let correct = if clusters.max(classes) <= EXHAUSTIVE_MAPPING_LIMIT {
        best_one_to_one(&confusion, clusters.max(classes))
    } else {
        confusion.iter().map(|row| row.iter().copied().max().unwrap_or(0)).sum()
    };
    Ok(correct as f64 / labels.len() as f64)
}

fn best_one_to_one(confusion: &[Vec<usize>], size: usize) -> usize {
    let cell = |c: usize, l: usize| confusion.get(c).and_then(|row| row.get(l)).copied().unwrap_or(0);
    let mut perm: Vec<usize> = (0..size).collect();
    let mut best = 0;
    permute(&mut perm, 0, &mut |p| {
        let total = p.iter().enumerate().map(|(c, &l)| cell(c, l)).sum();
        best = best.max(total);
    });
    best
}

fn permute(items: &mut [usize], start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Spread of [`synthetic_blobs`] used by the CLI.
pub const BLOB_SIGMA: f64 = 0.05;

/// Labeled Gaussian blobs: `k` centers drawn uniformly in `[0.2, 0.8]^d` and
/// redrawn until every pair is at least `8 sigma` apart, `n` points split
/// evenly across them, isotropic spread `sigma`.
pub fn synthetic_blobs(k: usize, n: usize, dim: usize, sigma: f64, seed: u64) -> Result<(Dataset, CentroidSet)> {
    if k == 0 || n < k || dim == 0 {
        return Err(Error::InvalidConfig(format!("cannot draw {n} points in {k} blobs of dimension {dim}")));
    }
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidConfig(format!("sigma = {sigma} must be finite and >= 0")));
    }
    let mut rng = SeededRng::new(seed);
    let min_gap = 8.0 * sigma;
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut attempts = 0;
    while centers.len() < k {
        let c: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.2, 0.8)).collect();
        let clear =
            centers.iter().all(|o| o.iter().zip(&c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() >= min_gap);
        attempts += 1;
        if clear {
            centers.push(c);
        } else if attempts > 10_000 {
            return Err(Error::InvalidConfig(format!("cannot place {k} blobs {min_gap} apart in {dim} dimensions")));
        }
    }
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let c = i % k;
        rows.push(centers[c].iter().map(|&m| m + sigma * rng.gaussian()).collect());
        labels.push(c);
    }
    Ok((Dataset::new(rows, Some(labels))?, CentroidSet::from_rows(&centers)?))
}

/// `row,cluster` per data point.
pub fn write_assignment(assignment: &Assignment, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["row", "cluster"])?;
    for (i, c) in assignment.membership.iter().enumerate() {
        w.write_record([i.to_string(), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// One centroid per row, headed by the feature names.
pub fn write_centroids(centroids: &CentroidSet, feature_names: &[String], path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(feature_names)?;
    for row in centroids.rows() {
        w.write_record(row.iter().map(|&v| fmt_float(v)))?;
    }
    w.flush()?;
    Ok(())
}

/// One row of the metrics file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterMetrics {
    pub method: String,
    pub fitness: f64,
    pub accuracy: Option<f64>,
}

/// `method,fitness[,accuracy]`; the accuracy column is present when every
/// row has one.
pub fn write_metrics(rows: &[ClusterMetrics], path: &Path) -> Result<()> {
    let labeled = !rows.is_empty() && rows.iter().all(|r| r.accuracy.is_some());
    let mut w = writer(path)?;
    if labeled {
        w.write_record(["method", "fitness", "accuracy"])?;
    } else {
        w.write_record(["method", "fitness"])?;
    }
    for r in rows {
        let mut record = vec![r.method.clone(), fmt_float(r.fitness)];
        if let (true, Some(a)) = (labeled, r.accuracy) {
            record.push(fmt_float(a));
        }
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(rows: &[&[f64]]) -> Dataset {
        Dataset::new(rows.iter().map(|r| r.to_vec()).collect(), None).unwrap()
    }

    #[test]
    fn minmax_columns() {
        let d = normalize_minmax(&ds(&[&[0.0, 3.0, 0.0], &[5.0, 3.0, 0.5], &[10.0, 3.0, 1.0]]));
        let col = |j: usize| d.points().map(|p| p[j]).collect::<Vec<_>>();
        assert_eq!(col(0), vec![0.0, 0.5, 1.0]);
        assert_eq!(col(1), vec![0.0, 0.0, 0.0]);
        assert_eq!(col(2), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn encode_decode() {
        let c = CentroidSet::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(encode(&c), vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(decode(&encode(&c), 2, 2).unwrap(), c);
        assert!(matches!(decode(&[0.0; 5], 2, 2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn sse_examples() {
        let one = ds(&[&[0.3, 0.4]]);
        assert_eq!(sse_fitness(&one, &CentroidSet::from_rows(&[vec![0.3, 0.4]]).unwrap()).unwrap(), 0.0);

        let two = ds(&[&[0.0, 0.0], &[2.0, 0.0]]);
        let c = CentroidSet::from_rows(&[vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(sse_fitness(&two, &c).unwrap(), 0.0);

        let pair = ds(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let c = CentroidSet::from_rows(&[vec![0.0, 0.0]]).unwrap();
        assert_eq!(sse_fitness(&pair, &c).unwrap(), 1.0);
    }

    #[test]
    fn sse_dimension_check() {
        let d = ds(&[&[0.0, 0.0]]);
        let c = CentroidSet::from_rows(&[vec![0.0, 0.0, 0.0]]).unwrap();
        assert!(sse_fitness(&d, &c).is_err());
    }

    #[test]
    fn nearest_breaks_ties_low() {
        let c = CentroidSet::from_rows(&[vec![-1.0], vec![1.0]]).unwrap();
        assert_eq!(c.nearest(&[0.0]).0, 0);
    }

    #[test]
    fn accuracy_examples() {
        let a = Assignment { k: 2, membership: vec![0, 0, 1, 1] };
        assert_eq!(accuracy(&a, Some(&[1, 1, 0, 0])).unwrap(), 1.0);

        let a = Assignment { k: 2, membership: vec![0; 4] };
        assert_eq!(accuracy(&a, Some(&[0, 1, 0, 1])).unwrap(), 0.5);

        // confusion [[40, 10], [5, 45]]
        let mut membership = vec![0; 50];
        membership.extend(vec![1; 50]);
        let mut labels = vec![0; 40];
        labels.extend(vec![1; 10]);
        labels.extend(vec![0; 5]);
        labels.extend(vec![1; 45]);
        let a = Assignment { k: 2, membership };
        assert!((accuracy(&a, Some(&labels)).unwrap() - 0.85).abs() < 1e-15);

        assert!(matches!(accuracy(&a, None), Err(Error::MissingLabels)));
    }

    #[test]
    fn kmeans_k_equals_n() {
        let d = ds(&[&[0.0], &[0.3], &[0.9], &[0.5]]);
        let r = kmeans_baseline(&d, 4, 1, 100).unwrap();
        assert_eq!(r.fitness, 0.0);
    }

    #[test]
    fn k_validation() {
        let d = ds(&[&[0.0], &[1.0]]);
        assert!(kmeans_baseline(&d, 3, 0, 10).is_err());
        assert!(kmeans_baseline(&d, 0, 0, 10).is_err());
        let s = OptimizerSettings::default();
        assert!(cluster_optimize(&d, 3, Algorithm::Mdbo, &s, 0).is_err());
    }

    #[test]
    fn csv_with_labels() {
        let text = "a,b,label\n1,2,fake\n3,4,real\n5,6,fake\n";
        let d = Dataset::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.label_names, vec!["fake", "real"]);
        assert_eq!(d.labels.as_deref(), Some(&[0, 1, 0][..]));
        assert_eq!(d.feature_names, vec!["a", "b"]);
    }

    #[test]
    fn csv_without_labels() {
        let d = Dataset::from_csv_reader("a,b\n1,2\n".as_bytes()).unwrap();
        assert!(d.labels.is_none());
    }

    #[test]
    fn csv_bad_row_names_line() {
        let err = Dataset::from_csv_reader("a,b\n1,2\n3,x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::MalformedCsv { line: 3, .. }), "{err}");
        let err = Dataset::from_csv_reader("a,b\n1,2\n3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::MalformedCsv { line: 3, .. }), "{err}");
    }

    #[test]
    fn blobs_are_labeled() {
        let (d, centers) = synthetic_blobs(3, 30, 4, 0.01, 5).unwrap();
        assert_eq!(d.len(), 30);
        assert_eq!(centers.k, 3);
        assert_eq!(d.labels.as_ref().unwrap().iter().filter(|&&l| l == 2).count(), 10);
    }
}
