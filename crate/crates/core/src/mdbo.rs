//! Military dog based optimizer.
//!
//! A squad of `m` dogs searches a box. Each iteration runs two phases, both
//! followed by fitness recomputation:
//!
//! * **sniffing** (exploitation): per coordinate, a dog either copies the
//!   loudest (best) dog's coordinate with probability `p_m`, or takes a wind
//!   step `R * w * K * (x - x_loudest)`;
//! * **barking** (exploration): unless blocked by smog (probability `alpha`),
//!   a dog moves by `R ⊙ (x_loudest - x_q)` for a random other dog `q`.
//!
//! The `keep` best dogs of the previous generation then replace the worst
//! dogs of the new one when strictly better. All moves are unconditional;
//! elitism is the only acceptance rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{sanitize, Objective};
use crate::rng::RngStream;
use crate::space::SearchSpace;
use crate::trace::{Incumbent, RunTrace};

/// One candidate solution: a position (feasible solution vector) and its
/// fitness (smell index). Lower fitness is better.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dog {
    pub fsv: Vec<f64>,
    pub mdsi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Squad {
    pub dogs: Vec<Dog>,
    pub loudest_index: usize,
    pub generation: usize,
    /// Objective calls charged to this squad so far.
    pub evaluations: u64,
}

impl Squad {
    pub fn len(&self) -> usize {
        self.dogs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dogs.is_empty()
    }

    pub fn loudest(&self) -> &Dog {
        &self.dogs[self.loudest_index]
    }

    /// Recomputes `loudest_index`; the lowest index wins ties.
    pub fn update_loudest(&mut self) {
        self.loudest_index = best_index(&self.dogs);
    }
}

pub(crate) fn best_index(dogs: &[Dog]) -> usize {
    let mut best = 0;
    for (i, dog) in dogs.iter().enumerate().skip(1) {
        if dog.mdsi < dogs[best].mdsi {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MdboParams {
    /// Squad size.
    pub m: usize,
    pub iterations: usize,
    /// Probability of copying the loudest dog's coordinate while sniffing.
    pub p_m: f64,
    /// Smog/vegetation constant: probability that a bark is not heard.
    pub alpha: f64,
    /// Wind constant scaling the sniffing step.
    pub w: f64,
    /// Elite count carried over between generations.
    pub keep: usize,
    /// Seed for callers that build their own `SeededRng`. The harness and
    /// the CLI derive per-run seeds from a base seed and ignore it.
    #[serde(skip)]
    pub seed: u64,
}

impl Default for MdboParams {
    fn default() -> Self {
        Self { m: 50, iterations: 500, p_m: 0.5, alpha: 0.25, w: 0.25, keep: 2, seed: 0 }
    }
}

impl MdboParams {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidConfig("squad size m must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.p_m) {
            return Err(Error::InvalidConfig(format!("p_m = {} is outside [0, 1]", self.p_m)));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidConfig(format!("alpha = {} is outside [0, 1]", self.alpha)));
        }
        if !(self.w >= 0.0 && self.w.is_finite()) {
            return Err(Error::InvalidConfig(format!("wind constant w = {} must be finite and >= 0", self.w)));
        }
        if self.keep >= self.m {
            return Err(Error::InvalidConfig(format!("keep = {} must be below m = {}", self.keep, self.m)));
        }
        Ok(())
    }
}

/// Scatters `m` dogs uniformly over the box and evaluates them.
pub fn initialize_squad(
    space: &SearchSpace,
    params: &MdboParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<Squad> {
    if params.m == 0 {
        return Err(Error::InvalidConfig("squad size m must be positive".into()));
    }
    let dogs: Vec<Dog> = (0..params.m)
        .map(|_| {
            let fsv = space.sample(rng);
            let mdsi = sanitize(objective.evaluate(&fsv));
            Dog { fsv, mdsi }
        })
        .collect();
    let mut squad = Squad { dogs, loudest_index: 0, generation: 0, evaluations: params.m as u64 };
    squad.update_loudest();
    Ok(squad)
}

fn check_squad(squad: &Squad, space: &SearchSpace) -> Result<()> {
    if squad.is_empty() || squad.loudest_index >= squad.len() {
        return Err(Error::InvalidConfig("squad is empty or its loudest index is out of range".into()));
    }
    if let Some(dog) = squad.dogs.iter().find(|d| d.fsv.len() != space.dim()) {
        return Err(Error::DimensionMismatch { expected: space.dim(), actual: dog.fsv.len() });
    }
    Ok(())
}

fn reevaluate(squad: &mut Squad, space: &SearchSpace, objective: &dyn Objective, moved: &[bool]) {
    for (dog, _) in squad.dogs.iter_mut().zip(moved).filter(|(_, &m)| m) {
        space.clamp_in_place(&mut dog.fsv);
        dog.mdsi = sanitize(objective.evaluate(&dog.fsv));
        squad.evaluations += 1;
    }
    squad.update_loudest();
}

/// Sniffing phase. The loudest dog is left in place; every other dog
/// updates each coordinate independently.
pub fn sniff_step(
    squad: &mut Squad,
    space: &SearchSpace,
    params: &MdboParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<()> {
    check_squad(squad, space)?;
    let leader = squad.loudest_index;
    let target = squad.dogs[leader].fsv.clone();
    let mut moved = vec![false; squad.len()];

    for (i, dog) in squad.dogs.iter_mut().enumerate() {
        if i == leader {
            continue;
        }
        for (x, &t) in dog.fsv.iter_mut().zip(&target) {
            let p = rng.uniform();
            if p <= params.p_m {
                *x = t;
            } else {
                let k = rng.uniform();
                let r = rng.uniform();
                let step = params.w * k * (*x - t);
                *x += r * step;
            }
        }
        moved[i] = true;
    }

    reevaluate(squad, space, objective, &moved);
    Ok(())
}

/// Barking phase. Displacements are computed from the positions at the
/// start of the phase.
pub fn bark_step(
    squad: &mut Squad,
    space: &SearchSpace,
    params: &MdboParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<()> {
    check_squad(squad, space)?;
    let m = squad.len();
    if m < 2 {
        return Err(Error::InvalidConfig("barking needs a squad of at least two dogs".into()));
    }
    let snapshot: Vec<Vec<f64>> = squad.dogs.iter().map(|d| d.fsv.clone()).collect();
    let loudest = &snapshot[squad.loudest_index];
    let mut moved = vec![false; m];

    for (i, dog) in squad.dogs.iter_mut().enumerate() {
        let p = rng.uniform();
        if p <= params.alpha {
            continue;
        }
        let mut q = rng.below(m - 1);
        if q >= i {
            q += 1;
        }
        let other = &snapshot[q];
        for (j, x) in dog.fsv.iter_mut().enumerate() {
            let r = rng.uniform();
            *x += (loudest[j] - other[j]) * r;
        }
        moved[i] = true;
    }

    reevaluate(squad, space, objective, &moved);
    Ok(())
}

/// Replaces the `keep` worst dogs of `current` with the `keep` best dogs of
/// `previous`, pairing best-with-worst, whenever the elite is strictly better.
pub fn apply_elitism(previous: &Squad, current: &mut Squad, keep: usize) {
    replace_worst_with_elites(&previous.dogs, &mut current.dogs, keep);
    current.update_loudest();
}

pub(crate) fn replace_worst_with_elites(previous: &[Dog], current: &mut [Dog], keep: usize) {
    if keep == 0 || previous.is_empty() || current.is_empty() {
        return;
    }
    let mut elite: Vec<usize> = (0..previous.len()).collect();
    elite.sort_by(|&a, &b| previous[a].mdsi.total_cmp(&previous[b].mdsi).then(a.cmp(&b)));
    let mut worst: Vec<usize> = (0..current.len()).collect();
    worst.sort_by(|&a, &b| current[b].mdsi.total_cmp(&current[a].mdsi).then(a.cmp(&b)));

    for (&e, &w) in elite.iter().zip(&worst).take(keep) {
        if previous[e].mdsi < current[w].mdsi {
            current[w] = previous[e].clone();
        }
    }
}

/// Full optimization loop over a fixed iteration budget.
pub fn mdbo_run(
    space: &SearchSpace,
    params: &MdboParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
) -> Result<RunTrace> {
    mdbo_run_observed(space, params, objective, rng, &mut |_, _| {})
}

/// As [`mdbo_run`], handing the squad to `observer` after every iteration.
pub fn mdbo_run_observed(
    space: &SearchSpace,
    params: &MdboParams,
    objective: &dyn Objective,
    rng: &mut dyn RngStream,
    observer: &mut dyn FnMut(usize, &[Dog]),
) -> Result<RunTrace> {
    params.validate()?;
    if params.m < 2 {
        return Err(Error::InvalidConfig("barking needs a squad of at least two dogs".into()));
    }
    let mut squad = initialize_squad(space, params, objective, rng)?;
    let first = squad.loudest();
    let mut best = Incumbent::new(&first.fsv, first.mdsi, params.iterations);

    for t in 0..params.iterations {
        let previous = squad.clone();
        sniff_step(&mut squad, space, params, objective, rng)?;
        bark_step(&mut squad, space, params, objective, rng)?;
        apply_elitism(&previous, &mut squad, params.keep);
        squad.generation += 1;

        let leader = squad.loudest();
        best.offer(&leader.fsv, leader.mdsi);
        best.close_iteration();
        observer(t, &squad.dogs);
    }

    Ok(best.finish(squad.evaluations))
}
