use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::Scalar;

use super::{common_dim, leq_all};

/// Partition of a point set into ranked nondominated fronts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrontPartition {
    /// `fronts[r]` holds the (ascending) point indices of rank `r + 1`.
    pub fronts: Vec<Vec<usize>>,
    /// Rank per point, starting at 1.
    pub ranks: Vec<usize>,
}

impl FrontPartition {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Sorts points into fronts: front 1 holds the minimal elements, front `r + 1` the minimal
/// elements of what remains after removing fronts `1..=r`.
///
/// Uses domination counting (`O(K·N²)`), which yields the same partition as repeated filtering.
pub fn nondominated_sort<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<FrontPartition> {
    common_dim(points)?;
    let len = points.len();
    let mut dominated_by_count = vec![0usize; len];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); len];
    for i in 0..len {
        let pi = points[i].as_ref();
        for j in (i + 1)..len {
            let pj = points[j].as_ref();
            if pi == pj {
                continue;
            }
            if leq_all(pi, pj) {
                dominates[i].push(j);
                dominated_by_count[j] += 1;
            } else if leq_all(pj, pi) {
                dominates[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }

    let mut ranks = vec![0usize; len];
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..len).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let rank = fronts.len() + 1;
        let mut next = Vec::new();
        for &i in &current {
            ranks[i] = rank;
            for &j in &dominates[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    Ok(FrontPartition { fronts, ranks })
}
