use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Minimizer, NelderMead, OptimizerResult, Powell};

pub const NELDER_MEAD: &str = "nelder-mead";
pub const POWELL: &str = "powell";

/// Name-keyed set of minimizers. External methods plug in through [`register`](Self::register).
#[derive(Clone)]
pub struct OptimizerRegistry<T> {
    entries: BTreeMap<String, Arc<dyn Minimizer<T>>>,
}

impl<T: Scalar> fmt::Debug for OptimizerRegistry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl<T: Scalar> Default for OptimizerRegistry<T> {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl<T: Scalar> OptimizerRegistry<T> {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// Nelder-Mead and Powell with their default tolerances.
    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register(NelderMead::<T>::default());
        reg.register(Powell::<T>::default());
        reg
    }

    /// Adds `minimizer` under its own name, replacing any previous entry.
    pub fn register<M: Minimizer<T> + 'static>(&mut self, minimizer: M) {
        self.entries
            .insert(minimizer.name().to_ascii_lowercase(), Arc::new(minimizer));
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Minimizer<T>>> {
        self.entries
            .get(&name.to_ascii_lowercase())
            .cloned()
            .ok_or_else(|| Error::UnknownOptimizer(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(&name.to_ascii_lowercase())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn minimize(
        &self,
        name: &str,
        f: &mut dyn FnMut(&[T]) -> T,
        start: &[T],
        budget: usize,
    ) -> Result<OptimizerResult<T>> {
        let minimizer = self.get(name)?;
        super::minimize_with(minimizer.as_ref(), f, start, budget)
    }
}
