//! Descriptive statistics, the Wilcoxon rank-sum test and box-plot summaries.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Significance level used for the `+ / - / =` marks.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

/// Largest `n * m` for which the exact null distribution is enumerated.
pub const EXACT_LIMIT: usize = 400;

/// Mean, sample standard deviation, best and worst of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single value.
    pub std: f64,
    pub best: f64,
    pub worst: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let n = values.len();
    let std = if n > 1 { (m2 / (n - 1) as f64).sqrt() } else { 0.0 };
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Summary { mean, std, best, worst })
}

/// Median of a sample (average of the two middle values for even sizes).
pub fn median(values: &[f64]) -> Result<f64> {
    quantile_type7(values, 0.5)
}

/// Quantile by linear interpolation between order statistics (Hyndman-Fan
/// type 7, the R and NumPy default).
pub fn quantile_type7(values: &[f64], prob: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&sorted, prob))
}

fn quantile_sorted(sorted: &[f64], prob: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * prob.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = h - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Five-number summary with Tukey fences.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxPlot {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    /// Most extreme values inside `[q1 - 1.5 IQR, q3 + 1.5 IQR]`.
    pub whisker_low: f64,
    pub whisker_high: f64,
    /// Values outside the fences, ascending.
    pub outliers: Vec<f64>,
}

pub fn boxplot_stats(values: &[f64]) -> Result<BoxPlot> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    let iqr = q3 - q1;
    let (low_fence, high_fence) = (q1 - 1.5 * iqr, q3 + 1.5 * iqr);
    let inside = |v: &f64| *v >= low_fence && *v <= high_fence;
    let whisker_low = sorted.iter().copied().find(inside).unwrap_or(q1);
    let whisker_high = sorted.iter().rev().copied().find(inside).unwrap_or(q3);
    let outliers = sorted.iter().copied().filter(|v| !inside(v)).collect();
    Ok(BoxPlot {
        min: sorted[0],
        q1,
        median: quantile_sorted(&sorted, 0.5),
        q3,
        max: sorted[sorted.len() - 1],
        whisker_low,
        whisker_high,
        outliers,
    })
}

/// Midranks (1-based) of the pooled sample `a ++ b`.
pub fn pooled_midranks(a: &[f64], b: &[f64]) -> Vec<f64> {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]].total_cmp(&pooled[order[start]]).is_eq() {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let mid = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = mid;
        }
        start = end;
    }
    ranks
}

fn check_samples(a: &[f64], b: &[f64]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(())
}

/// Result of a two-sided Wilcoxon rank-sum (Mann-Whitney) test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSumTest {
    /// Rank sum of the first sample.
    pub statistic: f64,
    pub p_value: f64,
    /// Whether the exact null distribution was used.
    pub exact: bool,
}

/// Two-sided p-value: exact when `n * m <= 400`, normal approximation with
/// tie and continuity corrections otherwise.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<f64> {
    Ok(rank_sum_test(a, b)?.p_value)
}

pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<RankSumTest> {
    check_samples(a, b)?;
    let ranks = pooled_midranks(a, b);
    let statistic = ranks[..a.len()].iter().sum();
    let exact = a.len() * b.len() <= EXACT_LIMIT;
    let p_value = if exact { exact_from_ranks(&ranks, a.len()) } else { normal_from_ranks(&ranks, a.len()) };
    Ok(RankSumTest { statistic, p_value, exact })
}

/// Exact two-sided p-value under the permutation distribution of the
/// (mid)ranks: `min(1, 2 * min(P[W <= w], P[W >= w]))`.
pub fn rank_sum_exact_p(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a, b)?;
    Ok(exact_from_ranks(&pooled_midranks(a, b), a.len()))
}

/// Normal approximation with tie-corrected variance and continuity
/// correction.
pub fn rank_sum_normal_p(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a, b)?;
    Ok(normal_from_ranks(&pooled_midranks(a, b), a.len()))
}

fn exact_from_ranks(ranks: &[f64], n_first: usize) -> f64 {
    // Work with doubled ranks so midranks are integers, and with the smaller
    // sample to keep the table small. The two-sided p-value is invariant
    // under that swap.
    let total = ranks.len();
    let (sample, k) =
        if n_first <= total - n_first { (&ranks[..n_first], n_first) } else { (&ranks[n_first..], total - n_first) };
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let observed: usize = sample.iter().map(|r| (2.0 * r).round() as usize).sum();
    let max_sum: usize = doubled.iter().sum();

    // counts[j][s]: subsets of size j with doubled rank sum s
    let mut counts = vec![vec![0u64; max_sum + 1]; k + 1];
    counts[0][0] = 1;
    for (seen, &r) in doubled.iter().enumerate() {
        for j in (1..=k.min(seen + 1)).rev() {
            let (below, here) = counts.split_at_mut(j);
            let prev = &below[j - 1];
            let row = &mut here[0];
            for s in (r..=max_sum).rev() {
                row[s] += prev[s - r];
            }
        }
    }
    let dist = &counts[k];
    let all: u64 = dist.iter().sum();
    let lower: u64 = dist[..=observed].iter().sum();
    let upper: u64 = dist[observed..].iter().sum();
    (2.0 * lower.min(upper) as f64 / all as f64).min(1.0)
}

fn normal_from_ranks(ranks: &[f64], n_first: usize) -> f64 {
    let n = n_first as f64;
    let total = ranks.len();
    let m = (total - n_first) as f64;
    let big_n = total as f64;
    let w: f64 = ranks[..n_first].iter().sum();
    let mean = n * (big_n + 1.0) / 2.0;

    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < sorted.len() {
        let end = start + sorted[start..].iter().take_while(|&&r| r == sorted[start]).count();
        let t = (end - start) as f64;
        tie_term += t * t * t - t;
        start = end;
    }
    let correction = if total > 1 { tie_term / (big_n * (big_n - 1.0)) } else { 0.0 };
    let variance = n * m / 12.0 * ((big_n + 1.0) - correction);
    if variance <= 0.0 {
        return 1.0;
    }
    let z = ((w - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * normal.sf(z)).min(1.0)
}

/// Outcome of comparing the reference optimizer against an opponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mark {
    /// Significant and the reference mean is better (lower).
    Better,
    /// Significant and the reference mean is worse.
    Worse,
    /// Not significant (or equal means).
    Tie,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::Better => "+",
            Mark::Worse => "-",
            Mark::Tie => "=",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignificanceMark {
    pub p_value: f64,
    pub mark: Mark,
}

pub fn significance_mark(p_value: f64, mean_reference: f64, mean_other: f64) -> SignificanceMark {
    // NaN p-values count as not significant
    let significant = p_value < SIGNIFICANCE_LEVEL;
    let mark = if !significant {
        Mark::Tie
    } else if mean_reference < mean_other {
        Mark::Better
    } else if mean_reference > mean_other {
        Mark::Worse
    } else {
        Mark::Tie
    };
    SignificanceMark { p_value, mark }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_basics() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        assert!((s.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!((s.best, s.worst), (1.0, 4.0));
        assert_eq!(summarize(&[7.0; 15]).unwrap().std, 0.0);
        assert_eq!(summarize(&[3.0]).unwrap().std, 0.0);
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn quartiles_type7() {
        let b = boxplot_stats(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((b.min, b.q1, b.median, b.q3, b.max), (1.0, 2.0, 3.0, 4.0, 5.0));
        assert!(b.outliers.is_empty());
        assert_eq!(quantile_type7(&[1.0, 2.0, 3.0, 4.0], 0.25).unwrap(), 1.75);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]).unwrap(), 2.5);
    }

    #[test]
    fn constant_box() {
        let b = boxplot_stats(&[7.0; 6]).unwrap();
        assert_eq!((b.min, b.q1, b.median, b.q3, b.max), (7.0, 7.0, 7.0, 7.0, 7.0));
        assert!(b.outliers.is_empty());
    }

    #[test]
    fn flags_outlier() {
        let b = boxplot_stats(&[1.0, 2.0, 3.0, 4.0, 100.0]).unwrap();
        assert_eq!(b.outliers, vec![100.0]);
        assert_eq!(b.whisker_high, 4.0);
        assert_eq!(b.max, 100.0);
        assert!(boxplot_stats(&[]).is_err());
    }

    #[test]
    fn midranks_with_ties() {
        let r = pooled_midranks(&[1.0, 2.0, 2.0], &[4.0, 2.0]);
        assert_eq!(r, vec![1.0, 3.0, 3.0, 5.0, 3.0]);
    }

    #[test]
    fn identical_samples() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(wilcoxon_rank_sum(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn fully_separated_triplets() {
        let p = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[10.0, 11.0, 12.0]).unwrap();
        assert!((p - 0.1).abs() < 1e-15);
    }

    #[test]
    fn fifteen_vs_fifteen_dominated() {
        let a: Vec<f64> = (0..15).map(|i| 1e-12 * (i + 1) as f64).collect();
        let b: Vec<f64> = (0..15).map(|i| 10.0 + i as f64).collect();
        let test = rank_sum_test(&a, &b).unwrap();
        assert!(test.exact);
        // 2 / C(30, 15)
        assert!((test.p_value - 2.0 / 155_117_520.0).abs() < 1e-20);
        let mean_a = summarize(&a).unwrap().mean;
        let mean_b = summarize(&b).unwrap().mean;
        assert_eq!(significance_mark(test.p_value, mean_a, mean_b).mark, Mark::Better);
    }

    #[test]
    fn large_samples_use_normal() {
        let a: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let b: Vec<f64> = (0..30).map(|i| i as f64 + 0.5).collect();
        let test = rank_sum_test(&a, &b).unwrap();
        assert!(!test.exact);
        assert!(test.p_value > 0.5);
    }

    #[test]
    fn all_tied_is_one() {
        assert_eq!(rank_sum_normal_p(&[2.0; 4], &[2.0; 5]).unwrap(), 1.0);
        assert_eq!(rank_sum_exact_p(&[2.0; 4], &[2.0; 5]).unwrap(), 1.0);
    }

    #[test]
    fn empty_sample_rejected() {
        assert!(matches!(wilcoxon_rank_sum(&[], &[1.0]), Err(Error::EmptySample)));
        assert!(matches!(wilcoxon_rank_sum(&[1.0], &[]), Err(Error::EmptySample)));
    }

    #[test]
    fn marks() {
        assert_eq!(significance_mark(0.2, 1.0, 5.0).mark, Mark::Tie);
        assert_eq!(significance_mark(0.001, 1.0, 5.0).mark, Mark::Better);
        assert_eq!(significance_mark(0.001, 5.0, 1.0).mark, Mark::Worse);
        assert_eq!(significance_mark(0.05, 1.0, 5.0).mark, Mark::Tie);
        assert_eq!(Mark::Better.to_string(), "+");
        assert_eq!(Mark::Worse.to_string(), "-");
        assert_eq!(Mark::Tie.to_string(), "=");
    }
}
