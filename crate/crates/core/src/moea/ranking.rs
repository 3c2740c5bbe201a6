use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::pareto::{crowding_distance, nondominated_sort};
use crate::problem::{ObjectivePoint, Solution};
use crate::scalar::Scalar;

/// One parameter vector with its decoded candidate set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct Individual<T> {
    pub theta: Vec<T>,
    /// Candidate solutions, most probable first.
    pub solutions: Vec<Solution>,
    /// Images of `solutions`, same order.
    pub images: Vec<ObjectivePoint<T>>,
    /// 1 is best; 0 until ranked.
    pub rank: usize,
    pub crowding: T,
}

impl<T: Scalar> Individual<T> {
    pub fn new(theta: Vec<T>, solutions: Vec<Solution>, images: Vec<ObjectivePoint<T>>) -> Self {
        Self {
            theta,
            solutions,
            images,
            rank: 0,
            crowding: T::zero(),
        }
    }
}

/// Ranks individuals through the pooled image of all their candidate sets.
///
/// The pool keeps duplicates. Each pooled point gets its front rank and its crowding distance
/// within that front; an individual takes the smallest rank and the largest crowding among its
/// own points.
pub fn union_rank<T: Scalar>(population: &mut [Individual<T>]) -> Result<()> {
    let mut pool: Vec<&[T]> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for (i, ind) in population.iter().enumerate() {
        for y in &ind.images {
            pool.push(&y.values);
            owner.push(i);
        }
    }
    let partition = nondominated_sort(&pool)?;
    let mut crowding = vec![T::zero(); pool.len()];
    for front in &partition.fronts {
        let members: Vec<&[T]> = front.iter().map(|&j| pool[j]).collect();
        for (&j, c) in front.iter().zip(crowding_distance(&members)?) {
            crowding[j] = c;
        }
    }

    for ind in population.iter_mut() {
        ind.rank = usize::MAX;
        ind.crowding = T::neg_infinity();
    }
    for (j, &i) in owner.iter().enumerate() {
        let rank = partition.ranks[j];
        let ind = &mut population[i];
        ind.rank = ind.rank.min(rank);
        ind.crowding = ind.crowding.max(crowding[j]);
    }
    Ok(())
}
