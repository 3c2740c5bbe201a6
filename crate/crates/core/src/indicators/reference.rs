use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{ObjectivePoint, ObjectiveSpec, ProblemInstance, Solution};
use crate::scalar::Scalar;

/// Single-objective optima of an instance and the points derived from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct ReferenceContext<T> {
    /// `y^I_k = f_k(x^{(k)})`.
    pub ideal: Vec<T>,
    /// `ỹ^N_k = max_j f_k(x^{(j)})`; the exact nadir when there are two objectives. Also the
    /// hypervolume reference point.
    pub nadir: Vec<T>,
    /// `x^{(k)}`, smallest index among minimizers of `f_k`.
    pub optima: Vec<Solution>,
    /// `y^{(k)} = f(x^{(k)})`.
    pub optima_images: Vec<ObjectivePoint<T>>,
}

impl<T: Scalar> ReferenceContext<T> {
    fn from_optima(instance: &ProblemInstance<T>, optima: Vec<Solution>) -> Result<Self> {
        let images = optima
            .iter()
            .map(|x| instance.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        let ideal = (0..instance.k).map(|k| images[k].values[k]).collect();
        let nadir = (0..instance.k)
            .map(|k| {
                images
                    .iter()
                    .map(|y| y.values[k])
                    .fold(T::neg_infinity(), T::max)
            })
            .collect();
        Ok(Self {
            ideal,
            nadir,
            optima,
            optima_images: images,
        })
    }

    pub fn k(&self) -> usize {
        self.ideal.len()
    }
}

/// Computes the single-objective optima in closed form for linear objectives (set `x_i = 1`
/// exactly when its coefficient is negative) and by enumeration otherwise.
pub fn reference_context<T: Scalar>(instance: &ProblemInstance<T>) -> Result<ReferenceContext<T>> {
    let n = instance.n;
    let mut optima = Vec::with_capacity(instance.k);
    for objective in &instance.objectives {
        let index = match objective {
            ObjectiveSpec::Linear { c } => c
                .iter()
                .enumerate()
                .filter(|(_, &ci)| ci < T::zero())
                .fold(0usize, |acc, (i, _)| acc | (1 << i)),
            ObjectiveSpec::Quadratic { .. } => {
                let size = instance.space_size().map_err(|_| {
                    Error::Capability(format!(
                        "quadratic objective with n = {n} is too large to enumerate"
                    ))
                })?;
                let mut best = 0usize;
                let mut best_value = objective.value_at(0);
                for index in 1..size {
                    let v = objective.value_at(index);
                    if v < best_value {
                        best = index;
                        best_value = v;
                    }
                }
                best
            }
        };
        optima.push(Solution::new(index, n)?);
    }
    ReferenceContext::from_optima(instance, optima)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{line_instance, ProblemKind};
    use rand::{Rng, SeedableRng};

    #[test]
    fn line_instance_reference() {
        let inst = line_instance::<f64>(3).unwrap();
        let ctx = reference_context(&inst).unwrap();
        assert_eq!(ctx.optima[0].index(), 0b000);
        assert_eq!(ctx.optima[1].index(), 0b111);
        assert_eq!(ctx.ideal, vec![0.0, -7.0]);
        assert_eq!(ctx.nadir, vec![7.0, 0.0]);
    }

    #[test]
    fn zero_coefficients_pick_index_zero() {
        let inst = ProblemInstance::new(
            ProblemKind::Custom,
            0,
            vec![
                ObjectiveSpec::Linear { c: vec![0.0; 4] },
                ObjectiveSpec::Linear {
                    c: vec![1.0, -1.0, 0.0, 2.0],
                },
            ],
        )
        .unwrap();
        let ctx = reference_context(&inst).unwrap();
        assert_eq!(ctx.optima[0].index(), 0);
        assert_eq!(ctx.optima[1].index(), 0b0010);
    }

    fn random_quadratic(n: usize, seed: u64) -> ObjectiveSpec<f64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut j = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in a..n {
                let v = rng.random_range(-1.0..1.0);
                j[a][b] = v;
                j[b][a] = v;
            }
        }
        let h = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        ObjectiveSpec::Quadratic { j, h, c0: 0.3 }
    }

    #[test]
    fn quadratic_matches_enumeration() {
        let n = 8;
        for seed in 0..5 {
            let inst = ProblemInstance::new(
                ProblemKind::Custom,
                seed,
                vec![random_quadratic(n, seed), random_quadratic(n, seed + 100)],
            )
            .unwrap();
            let ctx = reference_context(&inst).unwrap();
            for (k, obj) in inst.objectives.iter().enumerate() {
                let values: Vec<f64> = (0..256).map(|x| obj.value_at(x)).collect();
                let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
                let argmin = values.iter().position(|&v| v == min).unwrap();
                assert_eq!(ctx.optima[k].index(), argmin);
                assert_eq!(ctx.ideal[k], min);
            }
            for k in 0..2 {
                assert!(ctx.ideal[k] <= ctx.nadir[k]);
            }
        }
    }

    #[test]
    fn large_quadratic_is_a_capability_error() {
        let n = 25;
        let quad = ObjectiveSpec::Quadratic {
            j: vec![vec![0.0; n]; n],
            h: vec![0.0; n],
            c0: 0.0,
        };
        let inst = ProblemInstance::new(
            ProblemKind::Custom,
            0,
            vec![quad, ObjectiveSpec::Linear { c: vec![1.0; n] }],
        )
        .unwrap();
        assert!(matches!(reference_context(&inst), Err(Error::Capability(_))));
    }
}
