use serde::{Deserialize, Serialize};

/// Outcome of one seeded optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    /// Best fitness seen up to and including each iteration.
    pub best_per_iteration: Vec<f64>,
    pub best_fsv: Vec<f64>,
    pub best_mdsi: f64,
    /// Number of objective calls made.
    pub evaluations: u64,
}

/// Running incumbent used by every optimizer to build its [`RunTrace`].
#[derive(Debug, Clone)]
pub(crate) struct Incumbent {
    position: Vec<f64>,
    fitness: f64,
    history: Vec<f64>,
}

impl Incumbent {
    pub(crate) fn new(position: &[f64], fitness: f64, iterations: usize) -> Self {
        Self { position: position.to_vec(), fitness, history: Vec::with_capacity(iterations) }
    }

    pub(crate) fn offer(&mut self, position: &[f64], fitness: f64) {
        if fitness < self.fitness {
            self.fitness = fitness;
            self.position.clear();
            self.position.extend_from_slice(position);
        }
    }

    pub(crate) fn close_iteration(&mut self) {
        self.history.push(self.fitness);
    }

    pub(crate) fn finish(self, evaluations: u64) -> RunTrace {
        RunTrace { best_per_iteration: self.history, best_fsv: self.position, best_mdsi: self.fitness, evaluations }
    }
}
