//! Derivative-free scalar minimizers behind one interface.
//!
//! A [`Minimizer`] drives a [`ScalarObjective`], which owns the evaluation budget and the
//! incumbent: every evaluation goes through it, so the reported best point is always the best
//! evaluated point and the budget can never be exceeded.

mod nelder_mead;
mod objective;
mod powell;
mod registry;

pub use nelder_mead::NelderMead;
pub use objective::{OptimizerResult, ScalarObjective, Termination};
pub use powell::Powell;
pub use registry::{OptimizerRegistry, NELDER_MEAD, POWELL};

use crate::error::Result;
use crate::scalar::Scalar;

/// Default evaluation budget for single-criterion runs.
pub const DEFAULT_BUDGET: usize = 4000;

pub trait Minimizer<T: Scalar>: Send + Sync {
    fn name(&self) -> &str;

    /// Minimizes starting from `start` until the objective's budget or the method's own
    /// convergence test stops it.
    fn run(&self, objective: &mut ScalarObjective<'_, T>, start: &[T]) -> Result<Termination>;
}

/// Runs `minimizer` on `f` with a fresh evaluation budget.
pub fn minimize_with<T: Scalar>(
    minimizer: &dyn Minimizer<T>,
    f: &mut dyn FnMut(&[T]) -> T,
    start: &[T],
    budget: usize,
) -> Result<OptimizerResult<T>> {
    let mut objective = ScalarObjective::new(f, start.len(), budget)?;
    let termination = minimizer.run(&mut objective, start)?;
    objective.finish(termination)
}

/// `‖a − b‖₂`.
pub(crate) fn distance<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt()
}
