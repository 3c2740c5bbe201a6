//! Pareto dominance, nondominated filtering and sorting, crowding distance.
//!
//! Point collections are taken as slices of anything that views as `&[T]`, so the same functions
//! serve `ObjectivePoint`s, plain `Vec<T>`s and borrowed rows.

mod crowding;
mod dominance;
mod sort;

pub use crowding::crowding_distance;
pub use dominance::{nondominated_filter, strictly_dominates, weakly_dominates};
pub use sort::{nondominated_sort, FrontPartition};

use crate::error::{Error, Result};

/// Common dimension of a point set (0 for an empty set).
pub(crate) fn common_dim<T, P: AsRef<[T]>>(points: &[P]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let dim = first.as_ref().len();
    for p in points {
        Error::check_len("objective dimension", dim, p.as_ref().len())?;
    }
    Ok(dim)
}

#[inline]
pub(crate) fn leq_all<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
