//! Baseline metaheuristics: global-best PSO, a real-coded GA, a real-coded
//! Gaussian PBIL and a (mu + lambda) evolution strategy.
//!
//! All four share the MDBO run contract: uniform initialization in the box,
//! clamping, `keep`-elitism between generations and a best-so-far trace.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mdbo::{best_index, mdbo_run_observed, replace_worst_with_elites, Dog, MdboParams};
use crate::objective::{Evaluator, Objective};
use crate::rng::RngStream;
use crate::space::SearchSpace;
use crate::trace::{Incumbent, RunTrace};

/// Optimizer identifiers as used on the command line and in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mdbo,
    Pso,
    Ga,
    Pbil,
    Es,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Mdbo, Algorithm::Pso, Algorithm::Ga, Algorithm::Pbil, Algorithm::Es];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mdbo => "mdbo",
            Algorithm::Pso => "pso",
            Algorithm::Ga => "ga",
            Algorithm::Pbil => "pbil",
            Algorithm::Es => "es",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|a| a.name()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::UnknownAlgorithm { name: s.to_string(), valid: Self::valid_names() })
    }
}

/// Shared settings of the four baselines. Defaults follow the comparison
/// setup: population 50, 500 iterations, two elites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BaselineParams {
    pub m: usize,
    pub iterations: usize,
    pub keep: usize,
    /// PSO inertia.
    pub inertia: f64,
    /// PSO cognitive constant.
    pub c1: f64,
    /// PSO social constant.
    pub c2: f64,
    /// GA and ES per-gene mutation probability.
    pub mutation_probability: f64,
    /// GA and ES mutation step as a fraction of each coordinate's range.
    pub mutation_scale: f64,
    /// PBIL learning rate.
    pub learning_rate: f64,
    /// Seed for callers that build their own `SeededRng`. The harness and
    /// the CLI derive per-run seeds from a base seed and ignore it.
    #[serde(skip)]
    pub seed: u64,
}

impl Default for BaselineParams {
    fn default() -> Self {
        Self {
            m: 50,
            iterations: 500,
            keep: 2,
            inertia: 1.0,
            c1: 1.0,
            c2: 1.0,
            mutation_probability: 0.1,
            mutation_scale: 0.1,
            learning_rate: 0.3,
            seed: 0,
        }
    }
}

impl BaselineParams {
    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidConfig(format!("population size {} must be at least 2", self.m)));
        }
        if self.keep >= self.m {
            return Err(Error::InvalidConfig(format!("keep = {} must be below m = {}", self.keep, self.m)));
        }
        for (name, p) in [("mutation_probability", self.mutation_probability), ("learning_rate", self.learning_rate)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} = {p} is outside [0, 1]")));
            }
        }
        for (name, v) in
            [("inertia", self.inertia), ("c1", self.c1), ("c2", self.c2), ("mutation_scale", self.mutation_scale)]
        {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidConfig(format!("{name} = {v} must be finite and >= 0")));
            }
        }
        Ok(())
    }
}

/// Per-iteration hook: iteration index and the population after selection.
pub type Observer<'a> = &'a mut dyn FnMut(usize, &[Dog]);

fn random_population(space: &SearchSpace, n: usize, eval: &Evaluator, rng: &mut dyn RngStream) -> Vec<Dog> {
    (0..n)
        .map(|_| {
            let fsv = space.sample(rng);
            let mdsi = eval.eval(&fsv);
            Dog { fsv, mdsi }
        })
        .collect()
}

fn incumbent_of(population: &[Dog], iterations: usize) -> Incumbent {
    let best = &population[best_index(population)];
    Incumbent::new(&best.fsv, best.mdsi, iterations)
}

fn offer_best(best: &mut Incumbent, population: &[Dog]) {
    let leader = &population[best_index(population)];
    best.offer(&leader.fsv, leader.mdsi);
    best.close_iteration();
}

/// Global-best particle swarm. Velocities start at zero and are clamped to
/// half of each coordinate's range.
pub fn pso_run(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<RunTrace> {
    pso_run_observed(space, params, objective, rng, &mut |_, _| {})
}

pub fn pso_run_observed(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
    observer: Observer,
) -> Result<RunTrace> {
    params.validate()?;
    let eval = Evaluator::new(objective);
    let dim = space.dim();
    let vmax: Vec<f64> = (0..dim).map(|j| 0.5 * space.width(j)).collect();

    let mut swarm = random_population(space, params.m, &eval, rng);
    let mut velocity = vec![vec![0.0; dim]; params.m];
    let mut personal = swarm.clone();
    let mut best = incumbent_of(&swarm, params.iterations);

    for t in 0..params.iterations {
        let previous = swarm.clone();
        let leader = personal[best_index(&personal)].fsv.clone();
        for ((particle, v), own) in swarm.iter_mut().zip(&mut velocity).zip(&personal) {
            for j in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let x = particle.fsv[j];
                let vj = params.inertia * v[j] + params.c1 * r1 * (own.fsv[j] - x) + params.c2 * r2 * (leader[j] - x);
                v[j] = vj.clamp(-vmax[j], vmax[j]);
                let moved = x + v[j];
                particle.fsv[j] = moved.clamp(space.lower()[j], space.upper()[j]);
                if particle.fsv[j] != moved {
                    // absorbing wall
                    v[j] = 0.0;
                }
            }
            particle.mdsi = eval.eval(&particle.fsv);
        }
        replace_worst_with_elites(&previous, &mut swarm, params.keep);
        for (own, particle) in personal.iter_mut().zip(&swarm) {
            if particle.mdsi < own.mdsi {
                own.clone_from(particle);
            }
        }
        offer_best(&mut best, &swarm);
        observer(t, &swarm);
    }
    Ok(best.finish(eval.calls()))
}

fn tournament<'a>(population: &'a [Dog], rng: &mut dyn RngStream) -> &'a Dog {
    let a = &population[rng.below(population.len())];
    let b = &population[rng.below(population.len())];
    if b.mdsi < a.mdsi {
        b
    } else {
        a
    }
}

fn mutate_gaussian(x: &mut [f64], space: &SearchSpace, probability: f64, scale: f64, rng: &mut dyn RngStream) {
    for (j, v) in x.iter_mut().enumerate() {
        if rng.uniform() < probability {
            *v += scale * space.width(j) * rng.gaussian();
        }
    }
}

/// Generational GA: binary tournaments, uniform crossover, per-gene Gaussian
/// mutation.
pub fn ga_run(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<RunTrace> {
    ga_run_observed(space, params, objective, rng, &mut |_, _| {})
}

pub fn ga_run_observed(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
    observer: Observer,
) -> Result<RunTrace> {
    params.validate()?;
    let eval = Evaluator::new(objective);
    let mut population = random_population(space, params.m, &eval, rng);
    let mut best = incumbent_of(&population, params.iterations);

    for t in 0..params.iterations {
        let mut children = Vec::with_capacity(params.m);
        for _ in 0..params.m {
            let mother = tournament(&population, rng);
            let father = tournament(&population, rng);
            let mut fsv: Vec<f64> =
                mother.fsv.iter().zip(&father.fsv).map(|(&a, &b)| if rng.uniform() < 0.5 { a } else { b }).collect();
            mutate_gaussian(&mut fsv, space, params.mutation_probability, params.mutation_scale, rng);
            space.clamp_in_place(&mut fsv);
            let mdsi = eval.eval(&fsv);
            children.push(Dog { fsv, mdsi });
        }
        replace_worst_with_elites(&population, &mut children, params.keep);
        population = children;
        offer_best(&mut best, &population);
        observer(t, &population);
    }
    Ok(best.finish(eval.calls()))
}

/// Real-coded PBIL: an independent Gaussian per coordinate. The mean moves
/// toward the best sample of each generation at `learning_rate`; the spread
/// anneals linearly from a quarter of the range to a thousandth of it.
pub fn pbil_run(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<RunTrace> {
    pbil_run_observed(space, params, objective, rng, &mut |_, _| {}, &mut |_| {})
}

const PBIL_SIGMA_START: f64 = 0.25;
const PBIL_SIGMA_END: f64 = 1e-3;

/// As [`pbil_run`], additionally reporting the model mean after each update.
pub fn pbil_run_observed(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
    observer: Observer,
    mean_observer: &mut dyn FnMut(&[f64]),
) -> Result<RunTrace> {
    params.validate()?;
    let eval = Evaluator::new(objective);
    let dim = space.dim();
    let mut samples = random_population(space, params.m, &eval, rng);
    let mut mean = samples[best_index(&samples)].fsv.clone();
    let mut best = incumbent_of(&samples, params.iterations);
    let horizon = params.iterations.max(1) as f64;

    for t in 0..params.iterations {
        let frac = t as f64 / horizon;
        let spread = PBIL_SIGMA_START + (PBIL_SIGMA_END - PBIL_SIGMA_START) * frac;
        let previous = std::mem::take(&mut samples);
        samples = (0..params.m)
            .map(|_| {
                let mut fsv: Vec<f64> = (0..dim).map(|j| mean[j] + spread * space.width(j) * rng.gaussian()).collect();
                space.clamp_in_place(&mut fsv);
                let mdsi = eval.eval(&fsv);
                Dog { fsv, mdsi }
            })
            .collect();
        replace_worst_with_elites(&previous, &mut samples, params.keep);

        let leader = &samples[best_index(&samples)].fsv;
        for (mu, &x) in mean.iter_mut().zip(leader) {
            *mu = (1.0 - params.learning_rate) * *mu + params.learning_rate * x;
        }
        space.clamp_in_place(&mut mean);
        mean_observer(&mean);

        offer_best(&mut best, &samples);
        observer(t, &samples);
    }
    Ok(best.finish(eval.calls()))
}

/// Parents retained per generation by the evolution strategy.
pub const ES_MU: usize = 25;
/// Offspring produced per generation by the evolution strategy.
pub const ES_LAMBDA: usize = 50;
const ES_RECOMBINATION_PARENTS: usize = 3;

fn es_sizes(params: &BaselineParams) -> (usize, usize) {
    // mu : lambda fixed at 1 : 2, lambda equal to the population size
    let lambda = params.m;
    let mu = (lambda / 2).max(1);
    (mu, lambda)
}

/// (mu + lambda) evolution strategy with intermediate recombination of three
/// random parents and per-gene Gaussian mutation. With the default
/// population of 50 this is the (25 + 50) scheme.
pub fn es_run(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<RunTrace> {
    es_run_observed(space, params, objective, rng, &mut |_, _| {})
}

pub fn es_run_observed(
    space: &SearchSpace,
    params: &BaselineParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
    observer: Observer,
) -> Result<RunTrace> {
    params.validate()?;
    let (mu, lambda) = es_sizes(params);
    let eval = Evaluator::new(objective);
    let dim = space.dim();
    let mut parents = random_population(space, mu, &eval, rng);
    let mut best = incumbent_of(&parents, params.iterations);

    for t in 0..params.iterations {
        let previous = parents.clone();
        let mut pool = parents.clone();
        for _ in 0..lambda {
            let mut fsv = vec![0.0; dim];
            for _ in 0..ES_RECOMBINATION_PARENTS {
                let parent = &parents[rng.below(mu)];
                for (acc, &v) in fsv.iter_mut().zip(&parent.fsv) {
                    *acc += v;
                }
            }
            fsv.iter_mut().for_each(|v| *v /= ES_RECOMBINATION_PARENTS as f64);
            mutate_gaussian(&mut fsv, space, params.mutation_probability, params.mutation_scale, rng);
            space.clamp_in_place(&mut fsv);
            let mdsi = eval.eval(&fsv);
            pool.push(Dog { fsv, mdsi });
        }
        // stable sort: earlier (parent) entries win ties
        pool.sort_by(|a, b| a.mdsi.total_cmp(&b.mdsi));
        pool.truncate(mu);
        parents = pool;
        replace_worst_with_elites(&previous, &mut parents, params.keep.min(mu.saturating_sub(1)));
        offer_best(&mut best, &parents);
        observer(t, &parents);
    }
    Ok(best.finish(eval.calls()))
}

/// Parameters for any of the five optimizers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerSettings {
    pub mdbo: MdboParams,
    pub baseline: BaselineParams,
}

impl OptimizerSettings {
    pub fn iterations(&self, algorithm: Algorithm) -> usize {
        match algorithm {
            Algorithm::Mdbo => self.mdbo.iterations,
            _ => self.baseline.iterations,
        }
    }

    pub fn validate(&self, algorithm: Algorithm) -> Result<()> {
        match algorithm {
            Algorithm::Mdbo => self.mdbo.validate(),
            _ => self.baseline.validate(),
        }
    }
}

/// Runs `algorithm` with its settings. Uniform entry point for the harness.
pub fn run_algorithm(
    algorithm: Algorithm,
    settings: &OptimizerSettings,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<RunTrace> {
    run_algorithm_observed(algorithm, settings, space, objective, rng, &mut |_, _| {})
}

/// As [`run_algorithm`], reporting each generation's population.
pub fn run_algorithm_observed(
    algorithm: Algorithm,
    settings: &OptimizerSettings,
    space: &SearchSpace,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
    observer: Observer,
) -> Result<RunTrace> {
    let base = &settings.baseline;
    match algorithm {
        Algorithm::Mdbo => mdbo_run_observed(space, &settings.mdbo, objective, rng, observer),
        Algorithm::Pso => pso_run_observed(space, base, objective, rng, observer),
        Algorithm::Ga => ga_run_observed(space, base, objective, rng, observer),
        Algorithm::Pbil => pbil_run_observed(space, base, objective, rng, observer, &mut |_| {}),
        Algorithm::Es => es_run_observed(space, base, objective, rng, observer),
    }
}
