//! The seventeen-function benchmark suite, `F1` through `F17`.
//!
//! All functions are minimized and have optimum value 0. A few rows differ
//! from their textbook forms; see the notes on the individual variants.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::space::SearchSpace;

/// Default Perm `beta`.
pub const PERM_BETA: f64 = 0.5;

/// Per-coordinate maximiser of `x sin(sqrt|x|)` on `[-500, 500]`.
pub const SCHWEFEL_ARGMAX: f64 = 420.968_746_359_982;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BenchmarkId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    F15,
    F16,
    F17,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Modality {
    Unimodal,
    Multimodal,
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Modality::Unimodal => "unimodal",
            Modality::Multimodal => "multimodal",
        })
    }
}

/// Static description of one benchmark.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Benchmark {
    pub id: BenchmarkId,
    pub name: &'static str,
    pub lower: f64,
    pub upper: f64,
    pub modality: Modality,
    pub optimum_value: f64,
}

impl Benchmark {
    pub fn space(&self, dim: usize) -> Result<SearchSpace> {
        SearchSpace::uniform(dim, self.lower, self.upper)
    }

    pub fn optimum_point(&self, dim: usize) -> Vec<f64> {
        self.id.optimum_point(dim)
    }
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 17] = [
        BenchmarkId::F1,
        BenchmarkId::F2,
        BenchmarkId::F3,
        BenchmarkId::F4,
        BenchmarkId::F5,
        BenchmarkId::F6,
        BenchmarkId::F7,
        BenchmarkId::F8,
        BenchmarkId::F9,
        BenchmarkId::F10,
        BenchmarkId::F11,
        BenchmarkId::F12,
        BenchmarkId::F13,
        BenchmarkId::F14,
        BenchmarkId::F15,
        BenchmarkId::F16,
        BenchmarkId::F17,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn describe(self) -> Benchmark {
        use BenchmarkId::*;
        use Modality::*;
        let (name, lower, upper, modality) = match self {
            F1 => ("Ackley", -32.0, 32.0, Multimodal),
            F2 => ("Alpine", -100.0, 100.0, Multimodal),
            F3 => ("Dixon and Price", -100.0, 100.0, Unimodal),
            F4 => ("Griewank", -20.0, 20.0, Multimodal),
            F5 => ("Levy", -50.0, 50.0, Multimodal),
            F6 => ("Pathological", -100.0, 100.0, Multimodal),
            F7 => ("Perm", -100.0, 100.0, Multimodal),
            F8 => ("Powell", -10.0, 10.0, Unimodal),
            F9 => ("Powell Sum", -100.0, 100.0, Unimodal),
            F10 => ("Rastrigin", -5.12, 5.12, Unimodal),
            F11 => ("Rosenbrock", -30.0, 30.0, Multimodal),
            F12 => ("Rotated Hyper-Ellipsoid", -65.536, 65.536, Unimodal),
            F13 => ("Schumer Steiglitz", -100.0, 100.0, Unimodal),
            F14 => ("Schwefel", -500.0, 500.0, Multimodal),
            F15 => ("Sphere", -100.0, 100.0, Unimodal),
            F16 => ("Step", -100.0, 100.0, Unimodal),
            // the published upper bound is 3.14, not pi
            #[allow(clippy::approx_constant)]
            F17 => ("Trigonometric", 0.0, 3.14, Unimodal),
        };
        Benchmark { id: self, name, lower, upper, modality, optimum_value: 0.0 }
    }

    /// A global minimiser at dimension `dim`.
    pub fn optimum_point(self, dim: usize) -> Vec<f64> {
        use BenchmarkId::*;
        match self {
            // x_i = 2^(-(2^i - 2) / 2^i), i = 1..d
            F3 => (1..=dim).map(|i| 2f64.powf(-(1.0 - 2f64.powi(1 - i as i32)))).collect(),
            F5 | F11 => vec![1.0; dim],
            F7 => (1..=dim).map(|j| 1.0 / j as f64).collect(),
            F14 => vec![SCHWEFEL_ARGMAX; dim],
            _ => vec![0.0; dim],
        }
    }

    /// Evaluates the benchmark at `x`.
    pub fn evaluate(self, x: &[f64]) -> f64 {
        use BenchmarkId::*;
        match self {
            F1 => ackley(x),
            F2 => alpine(x),
            F3 => dixon_price(x),
            F4 => griewank(x),
            F5 => levy(x),
            F6 => pathological(x),
            F7 => perm(x, PERM_BETA),
            F8 => powell(x),
            F9 => powell_sum(x),
            F10 => rastrigin(x),
            F11 => rosenbrock(x),
            F12 => rotated_hyper_ellipsoid(x),
            F13 => schumer_steiglitz(x),
            F14 => schwefel(x),
            F15 => sphere(x),
            F16 => step(x),
            F17 => trigonometric(x),
        }
    }

    /// Evaluates with a dimension check.
    pub fn evaluate_checked(self, x: &[f64], dim: usize) -> Result<f64> {
        if x.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: x.len() });
        }
        Ok(self.evaluate(x))
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownBenchmark { name: s.to_string(), valid: Self::valid_names() };
        let digits = s.trim().strip_prefix(['F', 'f']).ok_or_else(unknown)?;
        let n: usize = digits.parse().map_err(|_| unknown())?;
        match n {
            1..=17 => Ok(Self::ALL[n - 1]),
            _ => Err(unknown()),
        }
    }
}

impl Objective for BenchmarkId {
    fn evaluate(&self, x: &[f64]) -> f64 {
        BenchmarkId::evaluate(*self, x)
    }
}

/// All seventeen descriptors in id order.
pub fn list_benchmarks() -> Vec<Benchmark> {
    BenchmarkId::ALL.iter().map(|id| id.describe()).collect()
}

/// Ackley with the inner exponent coefficient 0.02.
fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let squares = x.iter().map(|v| v * v).sum::<f64>() / d;
    let cosines = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
    -20.0 * (-0.02 * squares.sqrt()).exp() - cosines.exp() + 20.0 + E
}

fn alpine(x: &[f64]) -> f64 {
    x.iter().map(|v| (v * v.sin() + 0.1 * v).abs()).sum()
}

fn dixon_price(x: &[f64]) -> f64 {
    let head = (x[0] - 1.0).powi(2);
    head + x.windows(2).enumerate().map(|(k, w)| (k + 2) as f64 * (2.0 * w[1] * w[1] - w[0]).powi(2)).sum::<f64>()
}

fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let product: f64 = x.iter().enumerate().map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos()).product();
    1.0 + sum - product
}

/// Textbook Levy, minimum 0 at `(1, ..., 1)`.
fn levy(x: &[f64]) -> f64 {
    let w: Vec<f64> = x.iter().map(|v| 1.0 + (v - 1.0) / 4.0).collect();
    let last = w[w.len() - 1];
    let head = (PI * w[0]).sin().powi(2);
    let body: f64 =
        w[..w.len() - 1].iter().map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2))).sum();
    let tail = (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2));
    head + body + tail
}

fn pathological(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let num = (100.0 * a * a + b * b).sqrt().sin().powi(2) - 0.5;
            let den = 1.0 + 0.001 * (a * a - 2.0 * a * b + b * b).powi(2);
            0.5 + num / den
        })
        .sum()
}

/// `sum_i (sum_j (j + beta) (x_j^i - 1/j^i))^2`, minimum 0 at `x_j = 1/j`.
pub fn perm(x: &[f64], beta: f64) -> f64 {
    let d = x.len();
    (1..=d as i32)
        .map(|i| {
            let inner: f64 = x
                .iter()
                .enumerate()
                .map(|(j, xj)| {
                    let j = (j + 1) as f64;
                    (j + beta) * (xj.powi(i) - j.powi(i).recip())
                })
                .sum();
            inner * inner
        })
        .sum()
}

/// Trailing coordinates beyond the last full block of four are ignored.
fn powell(x: &[f64]) -> f64 {
    x.chunks_exact(4)
        .map(|c| {
            (c[0] + 10.0 * c[1]).powi(2)
                + 5.0 * (c[2] - c[3]).powi(2)
                + (c[0] + 2.0 * c[1]).powi(4)
                + 10.0 * (c[0] + c[3]).powi(4)
        })
        .sum()
}

fn powell_sum(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| v.abs().powi(i as i32 + 2)).sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64 + x.iter().map(|v| v * v - 10.0 * (2.0 * PI * v).cos()).sum::<f64>()
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2)).sum()
}

fn rotated_hyper_ellipsoid(x: &[f64]) -> f64 {
    let mut prefix = 0.0;
    let mut total = 0.0;
    for v in x {
        prefix += v * v;
        total += prefix;
    }
    total
}

fn schumer_steiglitz(x: &[f64]) -> f64 {
    x.iter().map(|v| v.powi(4)).sum()
}

/// Shifted by the per-coordinate peak so the minimum is 0.
fn schwefel(x: &[f64]) -> f64 {
    let peak = SCHWEFEL_ARGMAX * SCHWEFEL_ARGMAX.sqrt().sin();
    x.iter().map(|v| peak - v * v.abs().sqrt().sin()).sum()
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn step(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs().floor()).sum()
}

fn trigonometric(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let cos_sum: f64 = x.iter().map(|v| v.cos()).sum();
    x.iter()
        .enumerate()
        .map(|(i, v)| {
            let term = d - cos_sum + (i + 1) as f64 * (1.0 - v.cos() - v.sin());
            term * term
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use BenchmarkId::*;

    #[test]
    fn sphere_values() {
        assert_eq!(F15.evaluate(&[0.0; 30]), 0.0);
        assert_eq!(F15.evaluate(&[1.0, 2.0, 3.0]), 14.0);
    }

    #[test]
    fn ackley_origin() {
        assert!(F1.evaluate(&[0.0; 30]).abs() <= 1e-12);
    }

    #[test]
    fn rastrigin_at_ones() {
        assert!((F10.evaluate(&[1.0, 1.0]) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn griewank_origin() {
        assert_eq!(F4.evaluate(&[0.0; 30]), 0.0);
    }

    #[test]
    fn suite_metadata() {
        let all = list_benchmarks();
        assert_eq!(all.len(), 17);
        assert_eq!(F6.describe().modality, Modality::Multimodal);
        assert_eq!(F13.describe().modality, Modality::Unimodal);
        for b in &all {
            if b.id == F17 {
                #[allow(clippy::approx_constant)]
                let upper = 3.14;
                assert_eq!((b.lower, b.upper), (0.0, upper));
            } else {
                assert_eq!(b.lower, -b.upper, "{} not symmetric", b.id);
            }
        }
    }

    #[test]
    fn ids_parse_and_print() {
        for id in BenchmarkId::ALL {
            assert_eq!(id.to_string().parse::<BenchmarkId>().unwrap(), id);
        }
        assert_eq!("f3".parse::<BenchmarkId>().unwrap(), F3);
        let err = "F99".parse::<BenchmarkId>().unwrap_err().to_string();
        assert!(err.contains("F1") && err.contains("F17"));
        assert!("X1".parse::<BenchmarkId>().is_err());
    }

    #[test]
    fn dimension_check() {
        assert!(matches!(F15.evaluate_checked(&[1.0; 3], 4), Err(Error::DimensionMismatch { .. })));
        assert_eq!(F15.evaluate_checked(&[1.0; 4], 4).unwrap(), 4.0);
    }

    #[test]
    fn step_is_zero_inside_unit_box() {
        assert_eq!(F16.evaluate(&[0.99, -0.5, 0.0]), 0.0);
        assert_eq!(F16.evaluate(&[1.5, -2.5]), 3.0);
    }

    #[test]
    fn powell_ignores_trailing_coordinates() {
        let mut x = vec![0.0; 30];
        x[28] = 5.0;
        x[29] = -3.0;
        assert_eq!(F8.evaluate(&x), 0.0);
    }
}
