use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

use crate::error::{Error, Result};
use crate::problem::Solution;
use crate::rng::stream;
use crate::scalar::{total_cmp, Scalar};

use super::state::StateVector;

/// Measurement outcome counts keyed by basis index.
pub type ShotCounts = BTreeMap<usize, u64>;

/// The `P` most probable basis states, most probable first; equal probabilities are ordered by
/// ascending index.
pub fn top_p_solutions<T: Scalar>(state: &StateVector<T>, p: usize) -> Result<Vec<Solution>> {
    if p == 0 {
        return Err(Error::InvalidConfig("P must be at least 1".into()));
    }
    let probs = state.probabilities();
    let p = p.min(probs.len());
    let by_rank = |a: &usize, b: &usize| total_cmp(&probs[*b], &probs[*a]).then(a.cmp(b));
    let mut order: Vec<usize> = (0..probs.len()).collect();
    if p < order.len() {
        order.select_nth_unstable_by(p - 1, by_rank);
        order.truncate(p);
    }
    order.sort_unstable_by(by_rank);
    Ok(order
        .into_iter()
        .map(|i| Solution::unchecked(i, state.n()))
        .collect())
}

/// Draws `shots` independent measurements in the computational basis.
pub fn sample_shots<T: Scalar>(state: &StateVector<T>, shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::InvalidConfig("need at least one shot".into()));
    }
    let weights: Vec<f64> = state.probabilities().into_iter().map(T::as_f64).collect();
    let dist = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidConfig(format!("state has no measurable weight: {e}")))?;
    let mut rng = stream(seed, crate::rng::run_streams::SHOTS);
    let mut counts = ShotCounts::new();
    for _ in 0..shots {
        *counts.entry(dist.sample(&mut rng)).or_default() += 1;
    }
    Ok(counts)
}

/// The `P` most frequent outcomes (fewer when fewer distinct outcomes were seen), ordered like
/// [`top_p_solutions`].
pub fn top_p_from_counts(counts: &ShotCounts, p: usize, n: usize) -> Vec<Solution> {
    let mut order: Vec<(usize, u64)> = counts.iter().map(|(&i, &c)| (i, c)).collect();
    order.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    order
        .into_iter()
        .take(p)
        .map(|(i, _)| Solution::unchecked(i, n))
        .collect()
}
