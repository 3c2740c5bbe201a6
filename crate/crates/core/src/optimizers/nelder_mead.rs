use crate::error::Result;
use crate::scalar::Scalar;

use super::{distance, Minimizer, ScalarObjective, Termination};

/// Downhill simplex with reflection 1, expansion 2, contraction ½ and shrink ½.
#[derive(Debug, Clone)]
pub struct NelderMead<T> {
    /// Stop once every vertex lies within this distance of the best one.
    pub x_tol: T,
    /// Offset of the initial simplex vertices along each axis.
    pub initial_step: T,
}

impl<T: Scalar> Default for NelderMead<T> {
    fn default() -> Self {
        Self {
            x_tol: T::of(1e-4),
            initial_step: T::of(0.05) * T::TAU(),
        }
    }
}

impl<T: Scalar> NelderMead<T> {
    pub fn with_tolerance(x_tol: T) -> Self {
        Self {
            x_tol,
            ..Self::default()
        }
    }
}

struct Vertex<T> {
    x: Vec<T>,
    f: T,
}

fn affine<T: Scalar>(base: &[T], towards: &[T], coeff: T) -> Vec<T> {
    // base + coeff · (towards − base)
    base.iter()
        .zip(towards)
        .map(|(&b, &t)| b + coeff * (t - b))
        .collect()
}

macro_rules! eval_or_stop {
    ($obj:expr, $x:expr) => {
        match $obj.evaluate(&$x) {
            Some(v) => v,
            None => return Ok(Termination::Budget),
        }
    };
}

impl<T: Scalar> Minimizer<T> for NelderMead<T> {
    fn name(&self) -> &str {
        super::NELDER_MEAD
    }

    fn run(&self, objective: &mut ScalarObjective<'_, T>, start: &[T]) -> Result<Termination> {
        let d = start.len();
        let (one, two, half) = (T::one(), T::of(2.0), T::of(0.5));

        let mut simplex: Vec<Vertex<T>> = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let mut x = start.to_vec();
            if i > 0 {
                x[i - 1] = x[i - 1] + self.initial_step;
            }
            let f = eval_or_stop!(objective, x);
            simplex.push(Vertex { x, f });
        }
        if objective.exhausted() {
            return Ok(Termination::Budget);
        }

        loop {
            simplex.sort_by(|a, b| a.f.partial_cmp(&b.f).expect("finite or +inf costs"));
            let diameter = simplex[1..]
                .iter()
                .map(|v| distance(&v.x, &simplex[0].x))
                .fold(T::zero(), T::max);
            if diameter < self.x_tol {
                return Ok(Termination::Tolerance);
            }

            let inv = one / T::of_usize(d);
            let mut centroid = vec![T::zero(); d];
            for v in &simplex[..d] {
                for (c, &x) in centroid.iter_mut().zip(&v.x) {
                    *c = *c + x * inv;
                }
            }
            let worst = &simplex[d];
            let (f_best, f_second, f_worst) = (simplex[0].f, simplex[d - 1].f, worst.f);

            // Reflection: c + (c − w).
            let xr = affine(&centroid, &worst.x, -one);
            let fr = eval_or_stop!(objective, xr);

            let replacement = if fr < f_best {
                let xe = affine(&centroid, &xr, two);
                let fe = eval_or_stop!(objective, xe);
                Some(if fe < fr {
                    Vertex { x: xe, f: fe }
                } else {
                    Vertex { x: xr, f: fr }
                })
            } else if fr < f_second {
                Some(Vertex { x: xr, f: fr })
            } else if fr < f_worst {
                let xc = affine(&centroid, &xr, half);
                let fc = eval_or_stop!(objective, xc);
                (fc <= fr).then_some(Vertex { x: xc, f: fc })
            } else {
                let xc = affine(&centroid, &worst.x, half);
                let fc = eval_or_stop!(objective, xc);
                (fc < f_worst).then_some(Vertex { x: xc, f: fc })
            };

            match replacement {
                Some(v) => simplex[d] = v,
                None => {
                    let best = simplex[0].x.clone();
                    for v in simplex[1..].iter_mut() {
                        v.x = affine(&best, &v.x, half);
                        v.f = eval_or_stop!(objective, v.x);
                    }
                }
            }
        }
    }
}
