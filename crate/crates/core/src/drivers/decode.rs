use crate::error::{Error, Result};
use crate::moea::Decoded;
use crate::problem::ProblemInstance;
use crate::qsim::{apply_ansatz, sample_shots, top_p_from_counts, top_p_solutions, AnsatzParams, PhaseTable};
use crate::scalar::Scalar;

use super::Extraction;

/// Maps parameter vectors to candidate sets for one instance.
#[derive(Debug, Clone)]
pub struct AnsatzDecoder<'a, T> {
    instance: &'a ProblemInstance<T>,
    tables: PhaseTable<T>,
    layers: usize,
    points: usize,
    extraction: Extraction,
    seed: u64,
}

impl<'a, T: Scalar> AnsatzDecoder<'a, T> {
    pub fn new(instance: &'a ProblemInstance<T>, layers: usize, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidConfig("candidate-set size must be positive".into()));
        }
        Ok(Self {
            instance,
            tables: PhaseTable::from_instance(instance)?,
            layers,
            points,
            extraction: Extraction::Exact,
            seed: 0,
        })
    }

    /// Switches to shot sampling; each call draws from a stream derived from `seed` and `θ`.
    pub fn with_extraction(mut self, extraction: Extraction, seed: u64) -> Self {
        self.extraction = extraction;
        self.seed = seed;
        self
    }

    pub fn dimension(&self) -> usize {
        AnsatzParams::<T>::dimension(self.layers, self.instance.k)
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// `X(θ)` most probable first, and `Y(θ)` in the same order. Solutions carry their images'
    /// origins.
    pub fn decode(&self, theta: &[T]) -> Result<Decoded<T>> {
        let params = AnsatzParams::new(self.layers, self.instance.k, theta.to_vec())?;
        let state = apply_ansatz(&params, &self.tables)?;
        let solutions = match self.extraction {
            Extraction::Exact => top_p_solutions(&state, self.points)?,
            Extraction::Shots(shots) => {
                let seed = self.seed ^ shot_seed(theta);
                let counts = sample_shots(&state, shots, seed)?;
                top_p_from_counts(&counts, self.points, self.instance.n)
            }
        };
        let images = solutions
            .iter()
            .map(|x| self.instance.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Decoded { solutions, images })
    }
}

/// Hash of a parameter vector, so repeated evaluations of one θ see the same shots.
fn shot_seed<T: Scalar>(theta: &[T]) -> u64 {
    theta.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, v| {
        (h ^ v.as_f64().to_bits()).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// One-off decoding of `params` with exact probabilities.
pub fn decode<T: Scalar>(
    instance: &ProblemInstance<T>,
    params: &AnsatzParams<T>,
    points: usize,
) -> Result<Decoded<T>> {
    AnsatzDecoder::new(instance, params.layers(), points)?.decode(params.angles())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate, GeneratorConfig};
    use crate::problem::{line_instance, ProblemKind, Solution};
    use crate::qsim::StateVector;
    use crate::rng::stream;
    use rand::Rng;

    #[test]
    fn zero_angles_take_lowest_indices() {
        let inst = line_instance::<f64>(4).unwrap();
        let params = AnsatzParams::zeros(5, 2).unwrap();
        let d = decode(&inst, &params, 4).unwrap();
        let idx: Vec<usize> = d.solutions.iter().map(Solution::index).collect();
        assert_eq!(idx, [0, 1, 2, 3]);
        for (x, y) in d.solutions.iter().zip(&d.images) {
            assert_eq!(y.values, inst.evaluate(x).unwrap().values);
            assert_eq!(y.origin, Some(*x));
        }
    }

    #[test]
    fn full_candidate_set_is_whole_space() {
        let inst = generate::<f64>(&GeneratorConfig::new(ProblemKind::Umoco2, 4, 3)).unwrap();
        let mut rng = stream(5, 0);
        let theta: Vec<f64> = (0..20).map(|_| rng.random::<f64>() * 6.28).collect();
        let d = AnsatzDecoder::new(&inst, 5, 16).unwrap().decode(&theta).unwrap();
        let mut idx: Vec<usize> = d.solutions.iter().map(Solution::index).collect();
        idx.sort_unstable();
        assert_eq!(idx, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn matches_full_probability_sort() {
        let inst = generate::<f64>(&GeneratorConfig::new(ProblemKind::Afm, 6, 1)).unwrap();
        let dec = AnsatzDecoder::new(&inst, 3, 8).unwrap();
        let tables = PhaseTable::from_instance(&inst).unwrap();
        let mut rng = stream(9, 0);
        for _ in 0..20 {
            let theta: Vec<f64> = (0..dec.dimension()).map(|_| rng.random::<f64>() * 6.28).collect();
            let got = dec.decode(&theta).unwrap();
            let state: StateVector<f64> =
                apply_ansatz(&AnsatzParams::new(3, 2, theta.clone()).unwrap(), &tables).unwrap();
            let probs = state.probabilities();
            let mut order: Vec<usize> = (0..probs.len()).collect();
            order.sort_by(|&a, &b| probs[b].partial_cmp(&probs[a]).unwrap().then(a.cmp(&b)));
            let idx: Vec<usize> = got.solutions.iter().map(Solution::index).collect();
            assert_eq!(idx, order[..8]);
        }
    }

    #[test]
    fn shots_are_reproducible() {
        let inst = line_instance::<f64>(3).unwrap();
        let dec = AnsatzDecoder::new(&inst, 1, 3)
            .unwrap()
            .with_extraction(Extraction::Shots(500), 4);
        let theta = [0.3, 0.9, 1.1, 0.2];
        let a = dec.decode(&theta).unwrap();
        assert_eq!(a, dec.decode(&theta).unwrap());
        assert!(a.solutions.len() <= 3);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let inst = line_instance::<f64>(3).unwrap();
        let dec = AnsatzDecoder::new(&inst, 2, 3).unwrap();
        assert!(dec.decode(&[0.0; 3]).is_err());
    }
}
