use crate::error::Result;
use crate::scalar::{total_cmp, Scalar};

use super::common_dim;

/// NSGA-II crowding distance of each point of one front.
///
/// Per objective the front is sorted (stable, so equal values keep input order); the first and
/// last points get `+∞`, every interior point adds `(next − prev) / (max − min)`. Objectives with
/// zero range add nothing to interior points. Fronts of at most two points are all `+∞`.
pub fn crowding_distance<T: Scalar, P: AsRef<[T]>>(front: &[P]) -> Result<Vec<T>> {
    let dim = common_dim(front)?;
    let len = front.len();
    if len <= 2 {
        return Ok(vec![T::infinity(); len]);
    }
    let mut distance = vec![T::zero(); len];
    let mut order: Vec<usize> = (0..len).collect();
    for k in 0..dim {
        order.sort_by(|&a, &b| total_cmp(&front[a].as_ref()[k], &front[b].as_ref()[k]));
        let lo = front[order[0]].as_ref()[k];
        let hi = front[order[len - 1]].as_ref()[k];
        distance[order[0]] = T::infinity();
        distance[order[len - 1]] = T::infinity();
        let range = hi - lo;
        if range <= T::zero() {
            continue;
        }
        for w in order.windows(3) {
            let gap = front[w[2]].as_ref()[k] - front[w[0]].as_ref()[k];
            distance[w[1]] = distance[w[1]] + gap / range;
        }
    }
    Ok(distance)
}
