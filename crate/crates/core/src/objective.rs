use std::cell::Cell;

/// A function to be minimized.
pub trait Objective: Sync {
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Counts objective calls and maps non-finite values to `+inf` so a
/// pathological point can never become the incumbent.
pub(crate) struct Evaluator<'a> {
    objective: &'a dyn Objective,
    calls: Cell<u64>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(objective: &'a dyn Objective) -> Self {
        Self { objective, calls: Cell::new(0) }
    }

    pub(crate) fn eval(&self, x: &[f64]) -> f64 {
        self.calls.set(self.calls.get() + 1);
        sanitize(self.objective.evaluate(x))
    }

    pub(crate) fn calls(&self) -> u64 {
        self.calls.get()
    }
}

pub(crate) fn sanitize(value: f64) -> f64 {
    if value.is_finite() {
        value
    } else {
        f64::INFINITY
    }
}
