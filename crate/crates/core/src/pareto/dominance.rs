use crate::error::{Error, Result};
use crate::scalar::{total_cmp, Scalar};

use super::{common_dim, leq_all};

/// `a ≦ b`: every component of `a` is at most the matching component of `b`.
pub fn weakly_dominates<T: Scalar>(a: &[T], b: &[T]) -> Result<bool> {
    Error::check_len("objective dimension", a.len(), b.len())?;
    Ok(leq_all(a, b))
}

/// `a ≦ b` and `a ≠ b`.
pub fn strictly_dominates<T: Scalar>(a: &[T], b: &[T]) -> Result<bool> {
    Ok(weakly_dominates(a, b)? && a != b)
}

/// Indices (ascending) of the minimal elements of `points`.
///
/// A point is minimal when no point of a different value weakly dominates it; points sharing a
/// value are kept together.
pub fn nondominated_filter<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<Vec<usize>> {
    let dim = common_dim(points)?;
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let mut keep = if dim == 2 {
        filter_2d(points)
    } else {
        filter_pairwise(points)
    };
    keep.sort_unstable();
    Ok(keep)
}

fn filter_pairwise<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let pi = points[i].as_ref();
            !points.iter().any(|q| {
                let q = q.as_ref();
                leq_all(q, pi) && q != pi
            })
        })
        .collect()
}

/// Lexicographic sweep: a group of equal points is dominated iff an earlier (lexicographically
/// smaller) group has a second coordinate no larger than the group's.
fn filter_2d<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (points[a].as_ref(), points[b].as_ref());
        total_cmp(&pa[0], &pb[0]).then_with(|| total_cmp(&pa[1], &pb[1]))
    });
    let mut keep = Vec::new();
    let mut best_second = T::infinity();
    let mut start = 0;
    while start < order.len() {
        let head = points[order[start]].as_ref();
        let mut end = start + 1;
        while end < order.len() && points[order[end]].as_ref() == head {
            end += 1;
        }
        if best_second > head[1] {
            keep.extend_from_slice(&order[start..end]);
        }
        if head[1] < best_second {
            best_second = head[1];
        }
        start = end;
    }
    keep
}
