//! Coverage indicators.
//!
//! `PS`, `OD` and `M` measure extent (larger is better); `DM`, `D` and `EV` measure unevenness
//! (smaller is better). The distribution-based indicators treat their input as a set: points
//! with equal values are counted once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pareto::common_dim;
use crate::scalar::{total_cmp, Scalar};

use super::ReferenceContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndicatorId {
    Ps,
    Od,
    M,
    Dm,
    D,
    Ev,
}

impl IndicatorId {
    pub const ALL: [IndicatorId; 6] = [
        IndicatorId::Ps,
        IndicatorId::Od,
        IndicatorId::M,
        IndicatorId::Dm,
        IndicatorId::D,
        IndicatorId::Ev,
    ];

    /// `+1` when a larger raw value means better coverage, `−1` otherwise.
    pub fn orientation(&self) -> i8 {
        match self {
            IndicatorId::Ps | IndicatorId::Od | IndicatorId::M => 1,
            IndicatorId::Dm | IndicatorId::D | IndicatorId::Ev => -1,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IndicatorId::Ps => "ps",
            IndicatorId::Od => "od",
            IndicatorId::M => "m",
            IndicatorId::Dm => "dm",
            IndicatorId::D => "d",
            IndicatorId::Ev => "ev",
        }
    }
}

impl fmt::Display for IndicatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for IndicatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IndicatorId::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown indicator `{s}`")))
    }
}

/// Indicator value plus a flag for inputs where the formula is undefined (reported as `+∞`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct IndicatorValue<T> {
    pub value: T,
    pub degenerate: bool,
}

impl<T: Scalar> IndicatorValue<T> {
    pub fn regular(value: T) -> Self {
        Self {
            value,
            degenerate: false,
        }
    }

    pub fn degenerate() -> Self {
        Self {
            value: T::infinity(),
            degenerate: true,
        }
    }
}

/// All six raw indicator values of one approximation set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct IndicatorValues<T> {
    pub ps: IndicatorValue<T>,
    pub od: IndicatorValue<T>,
    pub m: IndicatorValue<T>,
    pub dm: IndicatorValue<T>,
    pub d: IndicatorValue<T>,
    pub ev: IndicatorValue<T>,
}

impl<T: Scalar> IndicatorValues<T> {
    pub fn compute<P: AsRef<[T]>>(points: &[P], ctx: &ReferenceContext<T>) -> Result<Self> {
        let eval = |id| evaluate_indicator(id, points, ctx);
        Ok(Self {
            ps: eval(IndicatorId::Ps)?,
            od: eval(IndicatorId::Od)?,
            m: eval(IndicatorId::M)?,
            dm: eval(IndicatorId::Dm)?,
            d: eval(IndicatorId::D)?,
            ev: eval(IndicatorId::Ev)?,
        })
    }

    pub fn get(&self, id: IndicatorId) -> IndicatorValue<T> {
        match id {
            IndicatorId::Ps => self.ps,
            IndicatorId::Od => self.od,
            IndicatorId::M => self.m,
            IndicatorId::Dm => self.dm,
            IndicatorId::D => self.d,
            IndicatorId::Ev => self.ev,
        }
    }
}

/// Dispatches to the indicator named by `id`.
pub fn evaluate_indicator<T: Scalar, P: AsRef<[T]>>(
    id: IndicatorId,
    points: &[P],
    ctx: &ReferenceContext<T>,
) -> Result<IndicatorValue<T>> {
    Ok(match id {
        IndicatorId::Ps => IndicatorValue::regular(pareto_spread(points, ctx)?),
        IndicatorId::Od => IndicatorValue::regular(outer_diameter(points)?),
        IndicatorId::M => IndicatorValue::regular(m_indicator(points)?),
        IndicatorId::Dm => distribution_metric(points, ctx)?,
        IndicatorId::D => d_indicator(points, ctx)?,
        IndicatorId::Ev => evenness(points)?,
    })
}

/// Per-axis `max − min`.
fn ranges<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<Vec<T>> {
    let dim = common_dim(points)?;
    Ok((0..dim)
        .map(|k| {
            let (lo, hi) = points.iter().map(|p| p.as_ref()[k]).fold(
                (T::infinity(), T::neg_infinity()),
                |(lo, hi), v| (lo.min(v), hi.max(v)),
            );
            hi - lo
        })
        .collect())
}

/// Distinct points in first-occurrence order.
fn distinct<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Vec<&[T]> {
    let mut out: Vec<&[T]> = Vec::with_capacity(points.len());
    for p in points {
        let p = p.as_ref();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn euclid<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt()
}

/// Nearest point of `set` with a value different from `z` (smallest index on ties).
fn nearest<'a, T: Scalar>(z: &[T], set: &[&'a [T]]) -> Option<(&'a [T], T)> {
    let mut best: Option<(&[T], T)> = None;
    for &y in set {
        if y == z {
            continue;
        }
        let dist = euclid(z, y);
        if best.is_none_or(|(_, b)| dist < b) {
            best = Some((y, dist));
        }
    }
    best
}

/// Pareto spread: `Π_k |max_k Y − min_k Y| / |y^I_k − ỹ^N_k|`, a zero denominator making its
/// factor zero.
pub fn pareto_spread<T: Scalar, P: AsRef<[T]>>(
    points: &[P],
    ctx: &ReferenceContext<T>,
) -> Result<T> {
    if points.is_empty() {
        return Ok(T::zero());
    }
    let ranges = ranges(points)?;
    Error::check_len("reference dimension", ctx.k(), ranges.len())?;
    Ok(ranges
        .iter()
        .enumerate()
        .map(|(k, &range)| {
            let span = (ctx.ideal[k] - ctx.nadir[k]).abs();
            if span > T::zero() {
                range.abs() / span
            } else {
                T::zero()
            }
        })
        .fold(T::one(), |acc, f| acc * f))
}

/// Outer diameter: the largest single-axis extent.
pub fn outer_diameter<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<T> {
    if points.is_empty() {
        return Ok(T::zero());
    }
    Ok(ranges(points)?.into_iter().fold(T::zero(), T::max))
}

/// `M`: square root of the summed axis extents.
pub fn m_indicator<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<T> {
    if points.is_empty() {
        return Ok(T::zero());
    }
    Ok(ranges(points)?.into_iter().sum::<T>().sqrt())
}

/// Distribution metric.
///
/// With `d_{k,j}` the consecutive gaps of the sorted `k`-th coordinates, `m_k` their mean and
/// `s_k = Σ_j (d_{k,j} − m_k)² / (|Y| − 2)`:
/// `DM = (1/|Y|) Σ_k (s_k / m_k) · |y^I_k − ỹ^N_k| / (max_k Y − min_k Y)`.
/// Fewer than three distinct points, or an axis with zero extent, is degenerate.
pub fn distribution_metric<T: Scalar, P: AsRef<[T]>>(
    points: &[P],
    ctx: &ReferenceContext<T>,
) -> Result<IndicatorValue<T>> {
    let dim = common_dim(points)?;
    let set = distinct(points);
    let size = set.len();
    if size < 3 {
        return Ok(IndicatorValue::degenerate());
    }
    Error::check_len("reference dimension", ctx.k(), dim)?;
    let mut total = T::zero();
    for k in 0..dim {
        let mut coords: Vec<T> = set.iter().map(|p| p[k]).collect();
        coords.sort_by(total_cmp);
        let gaps: Vec<T> = coords.windows(2).map(|w| w[1] - w[0]).collect();
        let mean = gaps.iter().copied().sum::<T>() / T::of_usize(size - 1);
        let spread = coords[size - 1] - coords[0];
        if mean <= T::zero() || spread <= T::zero() {
            return Ok(IndicatorValue::degenerate());
        }
        let s = gaps.iter().map(|&g| (g - mean) * (g - mean)).sum::<T>() / T::of_usize(size - 2);
        total = total + (s / mean) * ((ctx.ideal[k] - ctx.nadir[k]).abs() / spread);
    }
    Ok(IndicatorValue::regular(total / T::of_usize(size)))
}

/// `D`-indicator.
///
/// `(Σ_k ‖y^{(k)} − nb(y^{(k)})‖ + Σ_y |μ₂ − ‖y − nb(y)‖|) / (Σ_k ‖y^{(k)} − nb(y^{(k)})‖ + |Y| μ₂)`
/// where `nb` is the Euclidean nearest neighbour within `Y` and `μ₂` the mean nearest-neighbour
/// distance. Fewer than two distinct points is degenerate.
pub fn d_indicator<T: Scalar, P: AsRef<[T]>>(
    points: &[P],
    ctx: &ReferenceContext<T>,
) -> Result<IndicatorValue<T>> {
    let dim = common_dim(points)?;
    let set = distinct(points);
    if set.len() < 2 {
        return Ok(IndicatorValue::degenerate());
    }
    Error::check_len("reference dimension", ctx.k(), dim)?;
    let nn: Vec<T> = set
        .iter()
        .map(|y| nearest(y, &set).map(|(_, d)| d).expect("two distinct points"))
        .collect();
    let size = T::of_usize(set.len());
    let mu = nn.iter().copied().sum::<T>() / size;
    let extremes = ctx
        .optima_images
        .iter()
        .map(|y| nearest(y.as_ref(), &set).map(|(_, d)| d).unwrap_or(T::zero()))
        .sum::<T>();
    let unevenness = nn.iter().map(|&d| (mu - d).abs()).sum::<T>();
    let denominator = extremes + size * mu;
    if denominator <= T::zero() {
        return Ok(IndicatorValue::degenerate());
    }
    Ok(IndicatorValue::regular((extremes + unevenness) / denominator))
}

/// Evenness: largest over smallest nearest-neighbour distance. Fewer than two distinct points
/// is degenerate.
pub fn evenness<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Result<IndicatorValue<T>> {
    common_dim(points)?;
    let set = distinct(points);
    if set.len() < 2 {
        return Ok(IndicatorValue::degenerate());
    }
    let (lo, hi) = set
        .iter()
        .map(|y| nearest(y, &set).map(|(_, d)| d).expect("two distinct points"))
        .fold((T::infinity(), T::zero()), |(lo, hi), d| (lo.min(d), hi.max(d)));
    Ok(IndicatorValue::regular(hi / lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{ObjectivePoint, Solution};
    use proptest::prelude::*;

    fn ctx(ideal: [f64; 2], nadir: [f64; 2], optima: [[f64; 2]; 2]) -> ReferenceContext<f64> {
        ReferenceContext {
            ideal: ideal.to_vec(),
            nadir: nadir.to_vec(),
            optima: vec![Solution::new(0, 1).unwrap(), Solution::new(1, 1).unwrap()],
            optima_images: optima.iter().map(|p| ObjectivePoint::new(p.to_vec())).collect(),
        }
    }

    fn square() -> ReferenceContext<f64> {
        ctx([0.0, 0.0], [4.0, 4.0], [[0.0, 4.0], [4.0, 0.0]])
    }

    #[test]
    fn pareto_spread_examples() {
        let c = square();
        assert_eq!(pareto_spread(&[vec![1.0, 1.0]], &c).unwrap(), 0.0);
        assert_eq!(pareto_spread(&[vec![0.0, 4.0], vec![2.0, 2.0]], &c).unwrap(), 0.25);
        assert_eq!(pareto_spread(&[vec![0.0, 4.0], vec![4.0, 0.0]], &c).unwrap(), 1.0);
    }

    #[test]
    fn pareto_spread_zero_span_factor() {
        let c = ctx([0.0, 1.0], [4.0, 1.0], [[0.0, 1.0], [4.0, 1.0]]);
        assert_eq!(pareto_spread(&[vec![0.0, 0.0], vec![4.0, 2.0]], &c).unwrap(), 0.0);
    }

    #[test]
    fn outer_diameter_examples() {
        assert_eq!(outer_diameter(&[vec![1.0, 2.0]]).unwrap(), 0.0);
        assert_eq!(outer_diameter(&[vec![0.0, 0.0], vec![3.0, 1.0]]).unwrap(), 3.0);
        let pts = [vec![0.0, 5.0], vec![1.0, 0.0], vec![2.0, 2.0]];
        assert_eq!(outer_diameter(&pts).unwrap(), 5.0);
    }

    #[test]
    fn m_examples() {
        assert_eq!(m_indicator(&[vec![1.0, 2.0]]).unwrap(), 0.0);
        assert_eq!(m_indicator(&[vec![0.0, 0.0], vec![3.0, 1.0]]).unwrap(), 2.0);
        let v = m_indicator(&[vec![0.0, 1.0], vec![4.0, 0.0]]).unwrap();
        assert!((v - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dm_even_spacing_is_zero() {
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, 4.0 - i as f64]).collect();
        let v = distribution_metric(&pts, &square()).unwrap();
        assert!(!v.degenerate);
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn dm_two_points_is_degenerate() {
        let v = distribution_metric(&[vec![0.0, 4.0], vec![4.0, 0.0]], &square()).unwrap();
        assert!(v.degenerate && v.value.is_infinite());
    }

    #[test]
    fn dm_three_points() {
        // Gaps (1, 3) on both axes: m = 2, s = ((1−2)² + (3−2)²) / 1 = 2, each axis adds
        // (2/2)·(4/4) = 1, total 2/3.
        let pts = [vec![0.0, 4.0], vec![1.0, 3.0], vec![4.0, 0.0]];
        let v = distribution_metric(&pts, &square()).unwrap();
        assert!((v.value - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dm_zero_extent_axis_is_degenerate() {
        let pts = [vec![0.0, 1.0], vec![1.0, 1.0], vec![2.0, 1.0]];
        assert!(distribution_metric(&pts, &square()).unwrap().degenerate);
    }

    #[test]
    fn d_with_only_the_extremes() {
        // nb(y^(1)) = y^(2) and vice versa at distance δ; μ₂ = δ; (2δ + 0) / (2δ + 2δ).
        let c = square();
        let pts = [vec![0.0, 4.0], vec![4.0, 0.0]];
        let v = d_indicator(&pts, &c).unwrap();
        assert!((v.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn d_even_spacing_drops_middle_sum() {
        let c = square();
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64, 4.0 - i as f64]).collect();
        let step = 2f64.sqrt();
        let v = d_indicator(&pts, &c).unwrap();
        let expected = (2.0 * step) / (2.0 * step + 5.0 * step);
        assert!((v.value - expected).abs() < 1e-12);
    }

    #[test]
    fn d_singleton_is_degenerate() {
        assert!(d_indicator(&[vec![1.0, 1.0]], &square()).unwrap().degenerate);
        assert!(d_indicator(&[vec![1.0, 1.0], vec![1.0, 1.0]], &square())
            .unwrap()
            .degenerate);
    }

    #[test]
    fn evenness_examples() {
        let pts: Vec<Vec<f64>> = (0..4).map(|i| vec![i as f64, -(i as f64)]).collect();
        assert_eq!(evenness(&pts).unwrap().value, 1.0);
        let v = evenness::<f64, _>(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![3.0, 3.0]]).unwrap();
        assert!((v.value - 2.0).abs() < 1e-12);
        let dup = evenness(&[vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(dup.degenerate);
    }

    #[test]
    fn duplicates_do_not_change_evenness() {
        let a = evenness(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![3.0, 3.0]]).unwrap();
        let b = evenness(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![1.0, 1.0], vec![3.0, 3.0]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ids_parse_and_orient() {
        for id in IndicatorId::ALL {
            assert_eq!(id.label().parse::<IndicatorId>().unwrap(), id);
        }
        assert_eq!(IndicatorId::Ps.orientation(), 1);
        assert_eq!(IndicatorId::Ev.orientation(), -1);
        assert!("igd".parse::<IndicatorId>().is_err());
    }

    /// Direct transcription of the D and EV formulas over an index enumeration.
    fn d_oracle(y: &[[f64; 2]], extremes: &[[f64; 2]]) -> f64 {
        let dist = |a: &[f64; 2], b: &[f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
        let nb = |z: &[f64; 2]| {
            y.iter()
                .filter(|q| *q != z)
                .map(|q| dist(z, q))
                .fold(f64::INFINITY, f64::min)
        };
        let nn: Vec<f64> = y.iter().map(nb).collect();
        let mu = nn.iter().sum::<f64>() / y.len() as f64;
        let ext: f64 = extremes.iter().map(nb).sum();
        let dev: f64 = nn.iter().map(|d| (mu - d).abs()).sum();
        (ext + dev) / (ext + y.len() as f64 * mu)
    }

    fn ev_oracle(y: &[[f64; 2]]) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for (i, a) in y.iter().enumerate() {
            let mut best = f64::INFINITY;
            for (j, b) in y.iter().enumerate() {
                if i != j {
                    best = best.min(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
                }
            }
            lo = lo.min(best);
            hi = hi.max(best);
        }
        hi / lo
    }

    proptest! {
        #[test]
        fn d_and_ev_match_formula(raw in prop::collection::hash_set((0i32..50, 0i32..50), 6)) {
            let pts: Vec<[f64; 2]> = raw.into_iter().map(|(a, b)| [a as f64, b as f64]).collect();
            let extremes = [[0.0, 50.0], [50.0, 0.0]];
            let c = ctx([0.0, 0.0], [50.0, 50.0], extremes);
            let vecs: Vec<Vec<f64>> = pts.iter().map(|p| p.to_vec()).collect();
            let d = d_indicator(&vecs, &c).unwrap();
            prop_assert!((d.value - d_oracle(&pts, &extremes)).abs() < 1e-12);
            let ev = evenness(&vecs).unwrap();
            prop_assert!((ev.value - ev_oracle(&pts)).abs() < 1e-12);
            prop_assert!(ev.value >= 1.0);
        }

        #[test]
        fn extent_indicators_translate_and_scale(
            pts in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 2), 1..15),
            shift in -5.0f64..5.0,
            scale in 0.1f64..10.0,
        ) {
            let c = square();
            let shifted: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|v| v + shift).collect()).collect();
            let scaled: Vec<Vec<f64>> = pts.iter().map(|p| p.iter().map(|v| v * scale).collect()).collect();
            let ps = pareto_spread(&pts, &c).unwrap();
            prop_assert!((pareto_spread(&shifted, &c).unwrap() - ps).abs() < 1e-9);
            let od = outer_diameter(&pts).unwrap();
            prop_assert!((outer_diameter(&shifted, ).unwrap() - od).abs() < 1e-9);
            prop_assert!((outer_diameter(&scaled).unwrap() - scale * od).abs() < 1e-9);
            let m = m_indicator(&pts).unwrap();
            prop_assert!((m_indicator(&shifted).unwrap() - m).abs() < 1e-9);
            prop_assert!((m_indicator(&scaled).unwrap() - scale.sqrt() * m).abs() < 1e-9);
        }
    }
}
