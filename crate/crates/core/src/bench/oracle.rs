use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::indicators::{hypervolume, reference_context, ReferenceContext};
use crate::pareto::nondominated_filter;
use crate::problem::{ObjectivePoint, ProblemInstance, Solution};
use crate::scalar::Scalar;

/// Exhaustive ground truth for one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct ParetoOracle<T> {
    /// Efficient solutions in ascending index order.
    pub efficient: Vec<Solution>,
    /// Their images (the Pareto front, with repeats where solutions share an image).
    pub front: Vec<ObjectivePoint<T>>,
    pub context: ReferenceContext<T>,
    /// Hypervolume of the front with respect to `context.nadir`: the largest hypervolume any
    /// subset of the image can reach.
    pub hypervolume: T,
}

impl<T: Scalar> ParetoOracle<T> {
    /// Distinct front values.
    pub fn distinct_front(&self) -> Vec<&[T]> {
        let mut out: Vec<&[T]> = Vec::new();
        for p in &self.front {
            if !out.contains(&p.values.as_slice()) {
                out.push(&p.values);
            }
        }
        out
    }

    /// `HV / oracle HV`, or 1 when the oracle front encloses no volume.
    pub fn relative(&self, hv: T) -> T {
        if self.hypervolume > T::zero() {
            hv / self.hypervolume
        } else {
            T::one()
        }
    }
}

/// Enumerates all `2^n` solutions (limited to `n ≤ 24`).
pub fn brute_force_pareto<T: Scalar>(instance: &ProblemInstance<T>) -> Result<ParetoOracle<T>> {
    let size = instance.space_size()?;
    let image: Vec<ObjectivePoint<T>> = (0..size).map(|x| instance.evaluate_index(x)).collect();
    let keep = nondominated_filter(&image)?;
    let context = reference_context(instance)?;
    let front: Vec<ObjectivePoint<T>> = keep.iter().map(|&i| image[i].clone()).collect();
    let hv = hypervolume(&front, &context.nadir)?;
    Ok(ParetoOracle {
        efficient: keep.iter().map(|&i| Solution::unchecked(i, instance.n)).collect(),
        front,
        context,
        hypervolume: hv,
    })
}
