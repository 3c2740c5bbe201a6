use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::hypervolume;
use crate::pareto::nondominated_filter;
use crate::problem::{ObjectivePoint, Solution};
use crate::rng::{run_streams, stream};
use crate::scalar::Scalar;

use super::{binary_tournament, polynomial_mutation, sbx_crossover, union_rank, Bounds, Individual};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct GaConfig<T> {
    pub population: usize,
    pub sbx_eta: T,
    pub crossover_prob: T,
    pub mutation_eta: T,
    /// Per-gene mutation probability; `None` means `1 / d`.
    pub mutation_prob: Option<T>,
    pub max_generations: usize,
    pub max_evaluations: usize,
    pub bounds: Bounds<T>,
    pub seed: u64,
}

impl<T: Scalar> Default for GaConfig<T> {
    fn default() -> Self {
        Self {
            population: 5,
            sbx_eta: T::of(15.0),
            crossover_prob: T::of(0.9),
            mutation_eta: T::of(20.0),
            mutation_prob: None,
            max_generations: 200,
            max_evaluations: 4000,
            bounds: Bounds::angles(),
            seed: 0,
        }
    }
}

impl<T: Scalar> GaConfig<T> {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |p: T| p >= T::zero() && p <= T::one();
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.population < 2 {
            return bad("population must hold at least two individuals");
        }
        if self.max_generations == 0 || self.max_evaluations == 0 {
            return bad("generation and evaluation caps must be positive");
        }
        if !unit(self.crossover_prob) || !self.mutation_prob.is_none_or(unit) {
            return bad("probabilities must lie in [0, 1]");
        }
        if !(self.sbx_eta >= T::zero() && self.mutation_eta >= T::zero()) {
            return bad("distribution indices must be non-negative");
        }
        if !(self.bounds.lo <= self.bounds.hi) || !self.bounds.width().is_finite() {
            return bad("parameter box must be finite and non-empty");
        }
        Ok(())
    }
}

/// What a decoder returns for one parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Decoded<T> {
    pub solutions: Vec<Solution>,
    pub images: Vec<ObjectivePoint<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopReason {
    Generations,
    Evaluations,
}

impl StopReason {
    pub fn label(&self) -> &'static str {
        match self {
            StopReason::Generations => "generations",
            StopReason::Evaluations => "evaluations",
        }
    }
}

#[derive(Debug)]
pub struct Evolution<T> {
    /// Survivors of the last generation, ranked.
    pub population: Vec<Individual<T>>,
    /// Best pooled nondominated set seen, deduplicated by solution.
    pub archive: Vec<ObjectivePoint<T>>,
    pub archive_hv: T,
    /// Archive hypervolume after each generation (initialization included).
    pub hv_trace: Vec<T>,
    pub evaluations: usize,
    pub generations: usize,
    pub stop: StopReason,
    /// Decoder error that ended the run early, if any. The archive reflects everything
    /// decoded before it.
    pub failure: Option<Error>,
}

/// Pooled nondominated set of a population, one entry per distinct solution (or per distinct
/// value for points without an origin), in pool order.
fn pooled_front<T: Scalar>(population: &[Individual<T>]) -> Result<Vec<ObjectivePoint<T>>> {
    let mut pool: Vec<ObjectivePoint<T>> = Vec::new();
    for y in population.iter().flat_map(|ind| &ind.images) {
        let seen = pool.iter().any(|q| match (&q.origin, &y.origin) {
            (Some(a), Some(b)) => a == b,
            _ => q.values == y.values,
        });
        if !seen {
            pool.push(y.clone());
        }
    }
    let keep = nondominated_filter(&pool)?;
    Ok(keep.into_iter().map(|i| pool[i].clone()).collect())
}

struct Archive<T> {
    front: Vec<ObjectivePoint<T>>,
    hv: T,
    filled: bool,
}

impl<T: Scalar> Archive<T> {
    fn offer(&mut self, population: &[Individual<T>], reference: &[T]) -> Result<()> {
        let front = pooled_front(population)?;
        let hv = hypervolume(&front, reference)?;
        if !self.filled || hv > self.hv {
            self.front = front;
            self.hv = hv;
            self.filled = true;
        }
        Ok(())
    }
}

fn decode_all<T, F>(decoder: &F, thetas: Vec<Vec<T>>) -> Result<Vec<Individual<T>>>
where
    T: Scalar,
    F: Fn(&[T]) -> Result<Decoded<T>> + Sync,
{
    thetas
        .into_par_iter()
        .map(|theta| {
            let d = decoder(&theta)?;
            Ok(Individual::new(theta, d.solutions, d.images))
        })
        .collect()
}

/// Runs NSGA-II over `dimension`-long parameter vectors.
///
/// Every decoder call counts as one evaluation. Survivors are chosen from parents ∪ offspring by
/// (rank, crowding); the archive keeps the pooled nondominated set with the largest
/// hypervolume relative to `reference`.
pub fn evolve<T, F>(
    decoder: F,
    config: &GaConfig<T>,
    dimension: usize,
    reference: &[T],
) -> Result<Evolution<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> Result<Decoded<T>> + Sync,
{
    config.validate()?;
    if dimension == 0 {
        return Err(Error::InvalidConfig("cannot evolve zero parameters".into()));
    }
    let bounds = config.bounds;
    let mutation_prob = config
        .mutation_prob
        .unwrap_or_else(|| T::one() / T::of_usize(dimension));
    let mut init_rng = stream(config.seed, run_streams::INITIAL_PARAMETERS);
    let mut select_rng = stream(config.seed, run_streams::SELECTION);
    let mut cross_rng = stream(config.seed, run_streams::CROSSOVER);
    let mut mutate_rng = stream(config.seed, run_streams::MUTATION);

    let mut archive = Archive {
        front: Vec::new(),
        hv: T::zero(),
        filled: false,
    };
    let mut out = Evolution {
        population: Vec::new(),
        archive: Vec::new(),
        archive_hv: T::zero(),
        hv_trace: Vec::new(),
        evaluations: 0,
        generations: 0,
        stop: StopReason::Generations,
        failure: None,
    };

    let initial = config.population.min(config.max_evaluations);
    let thetas: Vec<Vec<T>> = (0..initial)
        .map(|_| (0..dimension).map(|_| bounds.sample(&mut init_rng)).collect())
        .collect();
    let mut population = match decode_all(&decoder, thetas) {
        Ok(p) => p,
        Err(e) => {
            out.failure = Some(e);
            return Ok(out);
        }
    };
    out.evaluations = initial;
    union_rank(&mut population)?;
    archive.offer(&population, reference)?;
    out.generations = 1;
    out.hv_trace.push(archive.hv);

    while out.generations < config.max_generations && out.evaluations < config.max_evaluations {
        let count = config.population.min(config.max_evaluations - out.evaluations);
        let mut children: Vec<Vec<T>> = Vec::with_capacity(count + 1);
        while children.len() < count {
            let a = binary_tournament(&population, &mut select_rng);
            let b = binary_tournament(&population, &mut select_rng);
            let (c1, c2) = sbx_crossover(
                &population[a].theta,
                &population[b].theta,
                config.sbx_eta,
                config.crossover_prob,
                bounds,
                &mut cross_rng,
            );
            for c in [c1, c2] {
                let m = polynomial_mutation(&c, config.mutation_eta, mutation_prob, bounds, &mut mutate_rng);
                children.push(m);
            }
        }
        children.truncate(count);

        let offspring = match decode_all(&decoder, children) {
            Ok(o) => o,
            Err(e) => {
                out.failure = Some(e);
                break;
            }
        };
        out.evaluations += count;
        population.extend(offspring);
        union_rank(&mut population)?;
        archive.offer(&population, reference)?;

        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by(|&i, &j| {
            let (x, y) = (&population[i], &population[j]);
            x.rank
                .cmp(&y.rank)
                .then_with(|| crate::scalar::total_cmp(&y.crowding, &x.crowding))
        });
        order.truncate(config.population);
        order.sort_unstable();
        let mut slots: Vec<Option<Individual<T>>> = population.into_iter().map(Some).collect();
        population = order.iter().map(|&i| slots[i].take().expect("unique index")).collect();

        out.generations += 1;
        out.hv_trace.push(archive.hv);
    }

    out.stop = if out.evaluations >= config.max_evaluations {
        StopReason::Evaluations
    } else {
        StopReason::Generations
    };
    out.population = population;
    out.archive = archive.front;
    out.archive_hv = archive.hv;
    Ok(out)
}
