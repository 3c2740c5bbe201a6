use crate::error::{Error, Result};
use crate::pareto::{common_dim, nondominated_filter};
use crate::scalar::{total_cmp, Scalar};

/// Largest nondominated set accepted by the slicing path (three or more objectives).
pub const MAX_SLICING_POINTS: usize = 32;

/// Lebesgue measure of `{ z ≦ r : ∃ y ∈ Y, y ≦ z }`.
///
/// Points outside the reference box (any `y_k > r_k`) enclose nothing and are dropped. Two
/// objectives use an exact sweep; more objectives slice along the last axis and recurse, which is
/// only accepted for up to [`MAX_SLICING_POINTS`] nondominated points.
pub fn hypervolume<T: Scalar, P: AsRef<[T]>>(points: &[P], reference: &[T]) -> Result<T> {
    let dim = common_dim(points)?;
    if !points.is_empty() {
        Error::check_len("reference point dimension", reference.len(), dim)?;
    }
    if reference.is_empty() {
        return Err(Error::InvalidConfig("reference point has no coordinates".into()));
    }
    let inside: Vec<&[T]> = points
        .iter()
        .map(AsRef::as_ref)
        .filter(|p| p.iter().zip(reference).all(|(y, r)| y <= r))
        .collect();
    if inside.is_empty() {
        return Ok(T::zero());
    }
    match reference.len() {
        1 => {
            let best = inside.iter().map(|p| p[0]).fold(T::infinity(), T::min);
            Ok(reference[0] - best)
        }
        2 => Ok(sweep_2d(inside, reference)),
        _ => {
            let keep = nondominated_filter(&inside)?;
            let mut front: Vec<Vec<T>> = keep.iter().map(|&i| inside[i].to_vec()).collect();
            front.sort_by(|a, b| {
                a.iter()
                    .zip(b.iter())
                    .map(|(x, y)| total_cmp(x, y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            front.dedup();
            if front.len() > MAX_SLICING_POINTS {
                return Err(Error::Capability(format!(
                    "hypervolume in {} dimensions is limited to {MAX_SLICING_POINTS} \
                     nondominated points, got {}",
                    reference.len(),
                    front.len()
                )));
            }
            Ok(slice(&front, reference))
        }
    }
}

/// Strips between consecutive nondominated points sorted by the first coordinate.
fn sweep_2d<T: Scalar, P: AsRef<[T]>>(inside: Vec<P>, reference: &[T]) -> T {
    let mut pts: Vec<(T, T)> = inside
        .iter()
        .map(|p| (p.as_ref()[0], p.as_ref()[1]))
        .collect();
    pts.sort_by(|a, b| total_cmp(&a.0, &b.0).then_with(|| total_cmp(&a.1, &b.1)));
    let mut area = T::zero();
    let mut ceiling = reference[1];
    for (i, &(x, y)) in pts.iter().enumerate() {
        if y >= ceiling {
            continue;
        }
        // Width runs to the next point that lowers the ceiling, or to the reference.
        let next_x = pts[i + 1..]
            .iter()
            .find(|q| q.1 < y)
            .map(|q| q.0)
            .unwrap_or(reference[0]);
        area = area + (next_x - x) * (reference[1] - y);
        ceiling = y;
    }
    area
}

fn slice<T: Scalar>(front: &[Vec<T>], reference: &[T]) -> T {
    let d = reference.len();
    if d == 2 {
        return sweep_2d(front.to_vec(), reference);
    }
    let last = d - 1;
    let mut order: Vec<&Vec<T>> = front.iter().collect();
    order.sort_by(|a, b| total_cmp(&a[last], &b[last]));
    let mut volume = T::zero();
    for i in 0..order.len() {
        let z = order[i][last];
        let z_next = order.get(i + 1).map(|p| p[last]).unwrap_or(reference[last]);
        if z_next <= z {
            continue;
        }
        let projected: Vec<Vec<T>> = order[..=i].iter().map(|p| p[..last].to_vec()).collect();
        volume = volume + slice(&projected, &reference[..last]) * (z_next - z);
    }
    volume
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Counts unit cells `[c, c+1)` inside the box below `r` that some point dominates.
    pub(crate) fn grid_cells(points: &[Vec<i64>], r: &[i64], lo: i64) -> i64 {
        let d = r.len();
        let mut count = 0;
        let mut cell = vec![lo; d];
        loop {
            if points
                .iter()
                .any(|p| p.iter().zip(&cell).all(|(y, c)| y <= c))
            {
                count += 1;
            }
            let mut axis = 0;
            loop {
                if axis == d {
                    return count;
                }
                cell[axis] += 1;
                if cell[axis] < r[axis] {
                    break;
                }
                cell[axis] = lo;
                axis += 1;
            }
        }
    }

    #[test]
    fn unit_box() {
        assert_eq!(hypervolume(&[vec![0.0, 0.0]], &[1.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn two_rectangles() {
        let hv = hypervolume(&[vec![0.0, 1.0], vec![1.0, 0.0]], &[2.0, 2.0]).unwrap();
        assert_eq!(hv, 3.0);
    }

    #[test]
    fn outside_points_are_dropped() {
        let hv = hypervolume(&[vec![0.0, 3.0], vec![1.0, 1.0]], &[2.0, 2.0]).unwrap();
        assert_eq!(hv, 1.0);
        let none: Vec<Vec<f64>> = vec![vec![3.0, 3.0]];
        assert_eq!(hypervolume(&none, &[2.0, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn empty_set_is_zero() {
        let none: Vec<Vec<f64>> = Vec::new();
        assert_eq!(hypervolume(&none, &[2.0, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn three_dimensional_cube() {
        let hv: f64 = hypervolume(&[vec![0.5, 0.5, 0.5]], &[1.0, 1.0, 1.0]).unwrap();
        assert!((hv - 0.125).abs() < 1e-12);
    }

    #[test]
    fn slicing_cap() {
        let pts: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let t = i as f64 / 39.0;
                vec![t, 1.0 - t, (t - 0.5).abs()]
            })
            .collect();
        assert!(matches!(
            hypervolume(&pts, &[2.0, 2.0, 2.0]),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn mismatched_reference() {
        assert!(hypervolume(&[vec![0.0, 0.0]], &[1.0, 1.0, 1.0]).is_err());
    }

    fn int_points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(0i64..8, dim), 1..max)
    }

    proptest! {
        #[test]
        fn grid_count_2d(points in int_points(2, 11)) {
            let r = [8i64, 8];
            let as_f: Vec<Vec<f64>> = points.iter().map(|p| p.iter().map(|&v| v as f64).collect()).collect();
            let hv = hypervolume(&as_f, &[8.0, 8.0]).unwrap();
            prop_assert_eq!(hv, grid_cells(&points, &r, 0) as f64);
        }

        #[test]
        fn grid_count_3d(points in int_points(3, 9)) {
            let r = [8i64, 8, 8];
            let as_f: Vec<Vec<f64>> = points.iter().map(|p| p.iter().map(|&v| v as f64).collect()).collect();
            let hv = hypervolume(&as_f, &[8.0, 8.0, 8.0]).unwrap();
            prop_assert_eq!(hv, grid_cells(&points, &r, 0) as f64);
        }

        #[test]
        fn monotone_and_filter_invariant(
            points in prop::collection::vec(prop::collection::vec(0.0f64..10.0, 2), 1..30),
            extra in prop::collection::vec(0.0f64..10.0, 2),
        ) {
            let r = [10.0, 10.0];
            let base = hypervolume(&points, &r).unwrap();
            let mut more = points.clone();
            more.push(extra);
            prop_assert!(hypervolume(&more, &r).unwrap() >= base - 1e-12);
            let keep = nondominated_filter(&points).unwrap();
            let front: Vec<&Vec<f64>> = keep.iter().map(|&i| &points[i]).collect();
            prop_assert!((hypervolume(&front, &r).unwrap() - base).abs() < 1e-9);
        }
    }
}
