use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    /// Evaluation budget (or generation cap) reached.
    Budget,
    /// The method's convergence tolerance was met.
    Tolerance,
    /// A full iteration made no progress at all.
    Stall,
}

impl Termination {
    pub fn label(&self) -> &'static str {
        match self {
            Termination::Budget => "budget",
            Termination::Tolerance => "tolerance",
            Termination::Stall => "stall",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct OptimizerResult<T> {
    pub best_theta: Vec<T>,
    pub best_cost: T,
    pub evaluations: usize,
    pub termination: Termination,
    /// Incumbent cost after each evaluation.
    pub trace: Vec<T>,
}

/// Budgeted, counting wrapper around a cost function.
pub struct ScalarObjective<'a, T> {
    f: &'a mut dyn FnMut(&[T]) -> T,
    dimension: usize,
    budget: usize,
    evaluations: usize,
    best_theta: Vec<T>,
    best_cost: T,
    trace: Vec<T>,
}

impl<'a, T: Scalar> ScalarObjective<'a, T> {
    pub fn new(f: &'a mut dyn FnMut(&[T]) -> T, dimension: usize, budget: usize) -> Result<Self> {
        if budget == 0 {
            return Err(Error::InvalidConfig("evaluation budget must be positive".into()));
        }
        if dimension == 0 {
            return Err(Error::InvalidConfig("cannot optimize over zero parameters".into()));
        }
        Ok(Self {
            f,
            dimension,
            budget,
            evaluations: 0,
            best_theta: Vec::new(),
            best_cost: T::infinity(),
            trace: Vec::with_capacity(budget.min(1 << 16)),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    pub fn remaining(&self) -> usize {
        self.budget - self.evaluations
    }

    pub fn exhausted(&self) -> bool {
        self.evaluations >= self.budget
    }

    /// Evaluates `theta`, or returns `None` once the budget is spent. Non-finite values are
    /// reported as `+∞`.
    pub fn evaluate(&mut self, theta: &[T]) -> Option<T> {
        if self.exhausted() {
            return None;
        }
        debug_assert_eq!(theta.len(), self.dimension);
        let raw = (self.f)(theta);
        let value = if raw.is_finite() { raw } else { T::infinity() };
        self.evaluations += 1;
        if value < self.best_cost || self.best_theta.is_empty() {
            self.best_cost = value;
            self.best_theta = theta.to_vec();
        }
        self.trace.push(self.best_cost);
        Some(value)
    }

    pub fn best_cost(&self) -> T {
        self.best_cost
    }

    pub fn finish(self, termination: Termination) -> Result<OptimizerResult<T>> {
        if self.evaluations == 0 {
            return Err(Error::InvalidConfig("optimizer made no evaluations".into()));
        }
        Ok(OptimizerResult {
            best_theta: self.best_theta,
            best_cost: self.best_cost,
            evaluations: self.evaluations,
            termination,
            trace: self.trace,
        })
    }
}
