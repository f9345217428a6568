//! Reference implementations and checks shared by the test targets.
#![allow(dead_code)]

use std::f64::consts::PI;

use mdbo_core::baselines::run_algorithm_observed;
use mdbo_core::{Algorithm, BenchmarkId, OptimizerSettings, SeededRng};

// ---------------------------------------------------------------------------
// Benchmarks, written index-by-index from the textbook definitions.

pub fn oracle_schwefel_peak() -> f64 {
    // golden-section maximization of t sin(sqrt t) on [400, 450]
    let f = |t: f64| t * t.sqrt().sin();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (400.0, 450.0);
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f((a + b) / 2.0)
}

pub fn oracle(id: BenchmarkId, x: &[f64]) -> f64 {
    let d = x.len();
    let xi = |i: usize| x[i - 1]; // 1-based
    let mut s = 0.0;
    match id.number() {
        1 => {
            let mut sq = 0.0;
            let mut cs = 0.0;
            for i in 1..=d {
                sq += xi(i) * xi(i);
                cs += (2.0 * PI * xi(i)).cos();
            }
            -20.0 * (-0.02 * (sq / d as f64).sqrt()).exp() - (cs / d as f64).exp() + 20.0 + 1f64.exp()
        }
        2 => {
            for i in 1..=d {
                s += (xi(i) * xi(i).sin() + 0.1 * xi(i)).abs();
            }
            s
        }
        3 => {
            s = (xi(1) - 1.0) * (xi(1) - 1.0);
            for i in 2..=d {
                let t = 2.0 * xi(i) * xi(i) - xi(i - 1);
                s += i as f64 * t * t;
            }
            s
        }
        4 => {
            let mut p = 1.0;
            for i in 1..=d {
                s += xi(i) * xi(i) / 4000.0;
                p *= (xi(i) / (i as f64).sqrt()).cos();
            }
            1.0 + s - p
        }
        5 => {
            let w = |i: usize| 1.0 + (xi(i) - 1.0) / 4.0;
            s = (PI * w(1)).sin().powf(2.0);
            for i in 1..d {
                s += (w(i) - 1.0).powf(2.0) * (1.0 + 10.0 * (PI * w(i) + 1.0).sin().powf(2.0));
            }
            s + (w(d) - 1.0).powf(2.0) * (1.0 + (2.0 * PI * w(d)).sin().powf(2.0))
        }
        6 => {
            for i in 1..d {
                let (a, b) = (xi(i), xi(i + 1));
                let num = (100.0 * a * a + b * b).sqrt().sin().powf(2.0) - 0.5;
                let den = 1.0 + 0.001 * (a * a - 2.0 * a * b + b * b).powf(2.0);
                s += 0.5 + num / den;
            }
            s
        }
        7 => {
            for i in 1..=d {
                let mut inner = 0.0;
                for j in 1..=d {
                    let jf = j as f64;
                    inner += (jf + 0.5) * (xi(j).powf(i as f64) - 1.0 / jf.powf(i as f64));
                }
                s += inner * inner;
            }
            s
        }
        8 => {
            for i in 1..=d / 4 {
                let (a, b, c, e) = (xi(4 * i - 3), xi(4 * i - 2), xi(4 * i - 1), xi(4 * i));
                s += (a + 10.0 * b).powf(2.0)
                    + 5.0 * (c - e).powf(2.0)
                    + (a + 2.0 * b).powf(4.0)
                    + 10.0 * (a + e).powf(4.0);
            }
            s
        }
        9 => {
            for i in 1..=d {
                s += xi(i).abs().powf((i + 1) as f64);
            }
            s
        }
        10 => {
            for i in 1..=d {
                s += xi(i) * xi(i) - 10.0 * (2.0 * PI * xi(i)).cos();
            }
            10.0 * d as f64 + s
        }
        11 => {
            for i in 1..d {
                s += 100.0 * (xi(i + 1) - xi(i) * xi(i)).powf(2.0) + (xi(i) - 1.0).powf(2.0);
            }
            s
        }
        12 => {
            for i in 1..=d {
                for j in 1..=i {
                    s += xi(j) * xi(j);
                }
            }
            s
        }
        13 => {
            for i in 1..=d {
                s += xi(i).powf(4.0);
            }
            s
        }
        14 => {
            let peak = oracle_schwefel_peak();
            for i in 1..=d {
                s += xi(i) * xi(i).abs().sqrt().sin();
            }
            d as f64 * peak - s
        }
        15 => {
            for i in 1..=d {
                s += xi(i) * xi(i);
            }
            s
        }
        16 => {
            for i in 1..=d {
                s += xi(i).abs().floor();
            }
            s
        }
        17 => {
            let mut cos_sum = 0.0;
            for j in 1..=d {
                cos_sum += xi(j).cos();
            }
            for i in 1..=d {
                let t = d as f64 - cos_sum + i as f64 * (1.0 - xi(i).cos() - xi(i).sin());
                s += t * t;
            }
            s
        }
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Wilcoxon rank-sum by brute-force enumeration.

pub fn combinations(n: usize, k: usize, start: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if current.len() == k {
        visit(current);
        return;
    }
    for i in start..n {
        current.push(i);
        combinations(n, k, i + 1, current, visit);
        current.pop();
    }
}

/// Two-sided p-value for tie-free samples: enumerate every way of giving
/// `a` its ranks and count sums at least as extreme on each side.
pub fn brute_force_p(a: &[f64], b: &[f64]) -> f64 {
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let rank = |v: f64| (pooled.iter().position(|&p| p == v).unwrap() + 1) as u64;
    let observed: u64 = a.iter().map(|&v| rank(v)).sum();
    let (mut below, mut above, mut total) = (0u64, 0u64, 0u64);
    combinations(pooled.len(), a.len(), 0, &mut Vec::new(), &mut |idx| {
        let w: u64 = idx.iter().map(|i| (i + 1) as u64).sum();
        total += 1;
        below += u64::from(w <= observed);
        above += u64::from(w >= observed);
    });
    (2.0 * below.min(above) as f64 / total as f64).min(1.0)
}

// ---------------------------------------------------------------------------
// Optimizer invariants.

/// Settings small enough for thousands of runs yet large enough to exercise
/// every operator.
pub fn small_settings(m: usize, iterations: usize, keep: usize) -> OptimizerSettings {
    let mut s = OptimizerSettings::default();
    s.mdbo.m = m;
    s.mdbo.iterations = iterations;
    s.mdbo.keep = keep;
    s.baseline.m = m;
    s.baseline.iterations = iterations;
    s.baseline.keep = keep;
    s
}

/// Runs `alg` twice and checks feasibility, constant population size,
/// elitist descent of the generation best, a best-so-far trace ending at the
/// reported best, and bitwise determinism.
pub fn check_run_invariants(
    alg: Algorithm,
    id: BenchmarkId,
    dim: usize,
    s: &OptimizerSettings,
    seed: u64,
) -> Result<(), String> {
    let space = id.describe().space(dim).unwrap();
    let run = |sizes: &mut Vec<usize>, gen_best: &mut Vec<f64>, infeasible: &mut usize| {
        run_algorithm_observed(alg, s, &space, &id, &mut SeededRng::new(seed), &mut |_, dogs| {
            sizes.push(dogs.len());
            gen_best.push(dogs.iter().map(|d| d.mdsi).fold(f64::INFINITY, f64::min));
            *infeasible += dogs.iter().filter(|d| !space.contains(&d.fsv)).count();
        })
        .map_err(|e| e.to_string())
    };
    let (mut sizes, mut gen_best, mut infeasible) = (Vec::new(), Vec::new(), 0);
    let trace = run(&mut sizes, &mut gen_best, &mut infeasible)?;
    let ctx = format!("{alg} {id} d={dim} seed={seed}");
    let non_increasing = |v: &[f64]| v.windows(2).all(|w| w[1] <= w[0]);
    let iterations = s.iterations(alg);

    if infeasible > 0 || !space.contains(&trace.best_fsv) {
        return Err(format!("{ctx}: {infeasible} out-of-bounds positions"));
    }
    if sizes.len() != iterations || sizes.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("{ctx}: population sizes {sizes:?}"));
    }
    if !non_increasing(&gen_best) {
        return Err(format!("{ctx}: generation best rose: {gen_best:?}"));
    }
    let h = &trace.best_per_iteration;
    if h.len() != iterations || !non_increasing(h) || h.last() != Some(&trace.best_mdsi) {
        return Err(format!("{ctx}: malformed trace {h:?} (best {})", trace.best_mdsi));
    }
    if id.evaluate(&trace.best_fsv) != trace.best_mdsi {
        return Err(format!("{ctx}: best_fsv does not evaluate to best_mdsi"));
    }
    let (mut sizes2, mut gen_best2, mut infeasible2) = (Vec::new(), Vec::new(), 0);
    let again = run(&mut sizes2, &mut gen_best2, &mut infeasible2)?;
    if again != trace || gen_best2 != gen_best {
        return Err(format!("{ctx}: rerun differs"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Clustering.

/// Minimum SSE over every split of `points` into two non-empty groups, each
/// scored against its own mean.
pub fn min_two_partition_sse(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    assert!((2..=20).contains(&n));
    let group_sse = |members: &[&Vec<f64>]| {
        let d = members[0].len();
        let mut mean = vec![0.0; d];
        for p in members {
            for j in 0..d {
                mean[j] += p[j] / members.len() as f64;
            }
        }
        members.iter().map(|p| (0..d).map(|j| (p[j] - mean[j]).powi(2)).sum::<f64>()).sum::<f64>()
    };
    let mut best = f64::INFINITY;
    // point 0 always in the first group; mask selects the rest of it
    for mask in 0u32..(1 << (n - 1)) {
        let (mut a, mut b) = (vec![&points[0]], Vec::new());
        for (i, p) in points.iter().enumerate().skip(1) {
            if mask & (1 << (i - 1)) != 0 {
                a.push(p);
            } else {
                b.push(p);
            }
        }
        if b.is_empty() {
            continue;
        }
        best = best.min(group_sse(&a) + group_sse(&b));
    }
    best
}
