use crate::error::Result;
use crate::scalar::Scalar;

use super::{Minimizer, ScalarObjective, Termination};

/// Powell's conjugate-direction method with golden-section line searches.
///
/// Each iteration minimizes along every direction in turn, then along the net displacement,
/// which replaces the oldest direction. Every `d` iterations the set is reset to the axes.
#[derive(Debug, Clone)]
pub struct Powell<T> {
    /// Relative decrease per iteration below which the search stops.
    pub f_tol: T,
    /// Golden-section bracket width at which a line search stops, relative to its initial
    /// trial step.
    pub line_tol: T,
    /// First trial step of a line search along a fresh direction.
    pub initial_step: T,
    pub max_expansions: usize,
}

impl<T: Scalar> Default for Powell<T> {
    fn default() -> Self {
        Self {
            f_tol: T::of(1e-10),
            line_tol: T::of(1e-4),
            initial_step: T::one(),
            max_expansions: 40,
        }
    }
}

struct Stop;

struct Line<'o, 'a, T> {
    objective: &'o mut ScalarObjective<'a, T>,
    origin: &'o [T],
    direction: &'o [T],
}

impl<T: Scalar> Line<'_, '_, T> {
    fn point(&self, t: T) -> Vec<T> {
        self.origin
            .iter()
            .zip(self.direction)
            .map(|(&o, &d)| o + t * d)
            .collect()
    }

    fn eval(&mut self, t: T) -> Result<T, Stop> {
        let x = self.point(t);
        self.objective.evaluate(&x).ok_or(Stop)
    }
}

impl<T: Scalar> Powell<T> {
    /// Minimizes along `direction` from `x` (cost `fx`); returns the step taken.
    fn line_search(
        &self,
        objective: &mut ScalarObjective<'_, T>,
        x: &mut Vec<T>,
        fx: &mut T,
        direction: &[T],
        step: T,
    ) -> Result<T, Stop> {
        let phi = T::of((1.0 + 5f64.sqrt()) / 2.0);
        let resphi = T::of(2.0) - phi;
        let mut line = Line {
            objective,
            origin: x,
            direction,
        };
        let mut best = (T::zero(), *fx);

        // Bracket a minimum around t = 0.
        let (mut a, mut b, mut fb) = (T::zero(), step, line.eval(step)?);
        if fb < best.1 {
            best = (b, fb);
        }
        let fa = *fx;
        let (lo, hi) = if fb < fa {
            let mut c = b + phi * (b - a);
            let mut fc = line.eval(c)?;
            let mut expansions = 0;
            while fc < fb && expansions < self.max_expansions {
                best = (c, fc);
                a = b;
                b = c;
                fb = fc;
                c = b + phi * (b - a);
                fc = line.eval(c)?;
                expansions += 1;
            }
            if fc < best.1 {
                best = (c, fc);
            }
            (a, c)
        } else {
            let back = -step;
            let fback = line.eval(back)?;
            if fback < fa {
                best = (back, fback);
                let (mut a, mut b, mut fb) = (T::zero(), back, fback);
                let mut c = b + phi * (b - a);
                let mut fc = line.eval(c)?;
                let mut expansions = 0;
                while fc < fb && expansions < self.max_expansions {
                    best = (c, fc);
                    a = b;
                    b = c;
                    fb = fc;
                    c = b + phi * (b - a);
                    fc = line.eval(c)?;
                    expansions += 1;
                }
                if fc < best.1 {
                    best = (c, fc);
                }
                (c.min(a), c.max(a))
            } else {
                (back, step)
            }
        };
        let _ = fb;

        // Golden-section refinement on [lo, hi].
        let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
        let width_tol = self.line_tol * step.abs();
        let mut x1 = lo + resphi * (hi - lo);
        let mut x2 = hi - resphi * (hi - lo);
        let mut f1 = line.eval(x1)?;
        let mut f2 = line.eval(x2)?;
        for (t, f) in [(x1, f1), (x2, f2)] {
            if f < best.1 {
                best = (t, f);
            }
        }
        while hi - lo > width_tol {
            if f1 < f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = lo + resphi * (hi - lo);
                f1 = line.eval(x1)?;
                if f1 < best.1 {
                    best = (x1, f1);
                }
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = hi - resphi * (hi - lo);
                f2 = line.eval(x2)?;
                if f2 < best.1 {
                    best = (x2, f2);
                }
            }
        }

        if best.1 < *fx {
            *x = line.point(best.0);
            *fx = best.1;
            Ok(best.0)
        } else {
            Ok(T::zero())
        }
    }

    fn iterate(
        &self,
        objective: &mut ScalarObjective<'_, T>,
        start: &[T],
    ) -> Result<Termination, Stop> {
        let d = start.len();
        let axes = || -> Vec<Vec<T>> {
            (0..d)
                .map(|i| {
                    let mut e = vec![T::zero(); d];
                    e[i] = T::one();
                    e
                })
                .collect()
        };
        let mut x = start.to_vec();
        let mut fx = objective.evaluate(&x).ok_or(Stop)?;
        let mut directions = axes();
        let mut steps = vec![self.initial_step; d];
        let mut iteration = 0usize;
        loop {
            let (x_start, f_start) = (x.clone(), fx);
            for i in 0..d {
                let moved =
                    self.line_search(objective, &mut x, &mut fx, &directions[i], steps[i])?;
                steps[i] = trial_step(moved, steps[i]);
            }
            iteration += 1;

            let decrease = f_start - fx;
            if decrease <= T::zero() {
                return Ok(Termination::Stall);
            }
            let scale = f_start.abs() + fx.abs();
            if T::of(2.0) * decrease <= self.f_tol * scale + T::min_positive_value() {
                return Ok(Termination::Tolerance);
            }

            let displacement: Vec<T> = x.iter().zip(&x_start).map(|(&a, &b)| a - b).collect();
            let length = displacement.iter().map(|&v| v * v).sum::<T>().sqrt();
            if length > T::zero() {
                let unit: Vec<T> = displacement.iter().map(|&v| v / length).collect();
                let moved = self.line_search(objective, &mut x, &mut fx, &unit, length)?;
                directions.remove(0);
                directions.push(unit);
                steps.remove(0);
                steps.push(trial_step(moved, length));
            }
            if iteration % d == 0 {
                directions = axes();
            }
        }
    }
}

/// Next trial step along a direction: the last move if there was one, else a halved guess.
fn trial_step<T: Scalar>(moved: T, previous: T) -> T {
    if moved != T::zero() {
        moved.abs()
    } else {
        (previous * T::of(0.5)).max(T::of(1e-12))
    }
}

impl<T: Scalar> Minimizer<T> for Powell<T> {
    fn name(&self) -> &str {
        super::POWELL
    }

    fn run(&self, objective: &mut ScalarObjective<'_, T>, start: &[T]) -> Result<Termination> {
        if objective.budget() < 2 * start.len() {
            objective.evaluate(start);
            return Ok(Termination::Budget);
        }
        Ok(self.iterate(objective, start).unwrap_or(Termination::Budget))
    }
}
