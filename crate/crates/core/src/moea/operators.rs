use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::Individual;

/// Closed box `[lo, hi]` applied to every gene.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct Bounds<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Bounds<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    /// `[0, 2π]`.
    pub fn angles() -> Self {
        Self::new(T::zero(), T::TAU())
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn clip(&self, v: T) -> T {
        v.max(self.lo).min(self.hi)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.lo + T::of(rng.random::<f64>()) * self.width()
    }
}

/// SBX spread factor for a uniform draw `u`.
pub(crate) fn sbx_beta<T: Scalar>(u: T, eta: T) -> T {
    let exponent = T::one() / (eta + T::one());
    let two = T::of(2.0);
    if u <= T::of(0.5) {
        (two * u).powf(exponent)
    } else {
        (T::one() / (two * (T::one() - u))).powf(exponent)
    }
}

/// Simulated binary crossover of a pair, applied with probability `prob`.
pub fn sbx_crossover<T: Scalar, R: Rng + ?Sized>(
    p1: &[T],
    p2: &[T],
    eta: T,
    prob: T,
    bounds: Bounds<T>,
    rng: &mut R,
) -> (Vec<T>, Vec<T>) {
    assert_eq!(p1.len(), p2.len(), "crossover parents differ in length");
    if T::of(rng.random::<f64>()) >= prob {
        return (p1.to_vec(), p2.to_vec());
    }
    let half = T::of(0.5);
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for (&a, &b) in p1.iter().zip(p2) {
        let beta = sbx_beta(T::of(rng.random::<f64>()), eta);
        c1.push(bounds.clip(half * ((T::one() - beta) * a + (T::one() + beta) * b)));
        c2.push(bounds.clip(half * ((T::one() + beta) * a + (T::one() - beta) * b)));
    }
    (c1, c2)
}

/// Relative perturbation of one gene at distance `below`/`above` (as fractions of the box width)
/// from the bounds.
pub(crate) fn polynomial_delta<T: Scalar>(u: T, eta: T, below: T, above: T) -> T {
    let one = T::one();
    let two = T::of(2.0);
    let power = one / (eta + one);
    if u <= T::of(0.5) {
        let val = two * u + (one - two * u) * (one - below).powf(eta + one);
        val.powf(power) - one
    } else {
        let val = two * (one - u) + two * (u - T::of(0.5)) * (one - above).powf(eta + one);
        one - val.powf(power)
    }
}

/// Polynomial mutation; each gene mutates independently with probability `prob`.
pub fn polynomial_mutation<T: Scalar, R: Rng + ?Sized>(
    theta: &[T],
    eta: T,
    prob: T,
    bounds: Bounds<T>,
    rng: &mut R,
) -> Vec<T> {
    let width = bounds.width();
    theta
        .iter()
        .map(|&g| {
            if T::of(rng.random::<f64>()) >= prob || width <= T::zero() {
                return g;
            }
            let below = (g - bounds.lo) / width;
            let above = (bounds.hi - g) / width;
            let delta = polynomial_delta(T::of(rng.random::<f64>()), eta, below, above);
            bounds.clip(g + delta * width)
        })
        .collect()
}

/// Index of the winner of one binary tournament between two distinct random members.
///
/// Lower rank wins, then larger crowding, then a coin flip.
pub fn binary_tournament<T: Scalar, R: Rng + ?Sized>(
    population: &[Individual<T>],
    rng: &mut R,
) -> usize {
    assert!(population.len() >= 2, "tournament needs two individuals");
    let a = rng.random_range(0..population.len());
    let mut b = rng.random_range(0..population.len() - 1);
    if b >= a {
        b += 1;
    }
    let (x, y) = (&population[a], &population[b]);
    match x.rank.cmp(&y.rank) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal if x.crowding > y.crowding => a,
        std::cmp::Ordering::Equal if y.crowding > x.crowding => b,
        _ => {
            if rng.random::<bool>() {
                a
            } else {
                b
            }
        }
    }
}
