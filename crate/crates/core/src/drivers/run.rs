use std::time::Instant;

use rand::Rng;

use crate::bench::ParetoOracle;
use crate::error::{Error, Result};
use crate::indicators::{coverage_cost, hypervolume, IndicatorValues};
use crate::moea::{evolve, Decoded, GaConfig};
use crate::optimizers::OptimizerRegistry;
use crate::problem::{ObjectivePoint, ProblemInstance};
use crate::rng::{run_streams, stream};
use crate::scalar::Scalar;

use super::{Algorithm, AnsatzDecoder, RunConfig, RunRecord};

/// Runs whichever algorithm `config` names.
pub fn run<T: Scalar>(
    instance: &ProblemInstance<T>,
    oracle: &ParetoOracle<T>,
    config: &RunConfig<T>,
    registry: &OptimizerRegistry<T>,
) -> Result<RunRecord<T>> {
    match config.algorithm {
        Algorithm::Qmoo => run_qmoo(instance, oracle, config, registry),
        Algorithm::Qmooc => run_qmooc(instance, oracle, config, registry),
        Algorithm::Qmoom => run_qmoom(instance, oracle, config),
    }
}

/// `θ₀ ~ U(0, 2π)^d` from the run seed.
fn initial_theta<T: Scalar>(seed: u64, dimension: usize) -> Vec<T> {
    let mut rng = stream(seed, run_streams::INITIAL_PARAMETERS);
    (0..dimension)
        .map(|_| T::of(rng.random::<f64>()) * T::TAU())
        .collect()
}

fn decoder_for<'a, T: Scalar>(
    instance: &'a ProblemInstance<T>,
    config: &RunConfig<T>,
) -> Result<AnsatzDecoder<'a, T>> {
    Ok(AnsatzDecoder::new(instance, config.layers, config.points_for(instance))?
        .with_extraction(config.extraction, config.seed))
}

struct Finished<T> {
    theta: Vec<T>,
    solutions: Vec<crate::problem::Solution>,
    images: Vec<ObjectivePoint<T>>,
    hv: T,
    evaluations: usize,
    trace: Vec<T>,
    termination: String,
}

fn record<T: Scalar>(
    instance: &ProblemInstance<T>,
    oracle: &ParetoOracle<T>,
    config: &RunConfig<T>,
    started: Instant,
    done: Finished<T>,
) -> Result<RunRecord<T>> {
    let indicators = IndicatorValues::compute(&done.images, &oracle.context)?;
    Ok(RunRecord {
        config: config.clone(),
        kind: instance.kind,
        n: instance.n,
        instance_seed: instance.seed,
        theta: done.theta,
        solutions: done.solutions,
        images: done.images,
        hv: done.hv,
        indicators,
        oracle_hv: oracle.hypervolume,
        rel_hv: oracle.relative(done.hv),
        evaluations: done.evaluations,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
        trace: done.trace,
        termination: done.termination,
    })
}

/// Scalar-optimizer loop shared by QMOO and QMOOC. Keeps the decoded set of the incumbent so
/// the reported set is the best one evaluated.
fn scalar_loop<T, C>(
    instance: &ProblemInstance<T>,
    oracle: &ParetoOracle<T>,
    config: &RunConfig<T>,
    registry: &OptimizerRegistry<T>,
    cost: C,
) -> Result<RunRecord<T>>
where
    T: Scalar,
    C: Fn(&[ObjectivePoint<T>]) -> Result<T>,
{
    config.validate(instance)?;
    let started = Instant::now();
    let decoder = decoder_for(instance, config)?;
    let minimizer = registry.get(&config.solver)?;
    let theta0 = initial_theta(config.seed, decoder.dimension());

    let mut incumbent: Option<(T, Decoded<T>)> = None;
    let mut failure: Option<Error> = None;
    let mut f = |theta: &[T]| -> T {
        if failure.is_some() {
            return T::infinity();
        }
        let evaluated = decoder
            .decode(theta)
            .and_then(|d| cost(&d.images).map(|c| (c, d)));
        match evaluated {
            Ok((c, d)) => {
                let c = if c.is_finite() { c } else { T::infinity() };
                if incumbent.as_ref().is_none_or(|(best, _)| c < *best) {
                    incumbent = Some((c, d));
                }
                c
            }
            Err(e) => {
                failure = Some(e);
                T::infinity()
            }
        }
    };
    let result = crate::optimizers::minimize_with(minimizer.as_ref(), &mut f, &theta0, config.budget)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let (_, best) = incumbent.expect("at least one evaluation");
    let hv = hypervolume(&best.images, &oracle.context.nadir)?;
    record(
        instance,
        oracle,
        config,
        started,
        Finished {
            theta: result.best_theta,
            solutions: best.solutions,
            images: best.images,
            hv,
            evaluations: result.evaluations,
            trace: result.trace,
            termination: result.termination.label().to_string(),
        },
    )
}

/// Minimizes `−HV(Y(θ))` against the nadir approximation.
pub fn run_qmoo<T: Scalar>(
    instance: &ProblemInstance<T>,
    oracle: &ParetoOracle<T>,
    config: &RunConfig<T>,
    registry: &OptimizerRegistry<T>,
) -> Result<RunRecord<T>> {
    if config.algorithm != Algorithm::Qmoo {
        return Err(Error::InvalidConfig(format!("run_qmoo given {}", config.algorithm)));
    }
    let reference = &oracle.context.nadir;
    scalar_loop(instance, oracle, config, registry, |y| {
        Ok(-hypervolume(y, reference)?)
    })
}

/// Minimizes `p·I(Y(θ)) + (1 − p)(−HV(Y(θ)))` with the configured indicator.
pub fn run_qmooc<T: Scalar>(
    instance: &ProblemInstance<T>,
    oracle: &ParetoOracle<T>,
    config: &RunConfig<T>,
    registry: &OptimizerRegistry<T>,
) -> Result<RunRecord<T>> {
    if config.algorithm != Algorithm::Qmooc {
        return Err(Error::InvalidConfig(format!("run_qmooc given {}", config.algorithm)));
    }
    let id = config
        .indicator
        .ok_or_else(|| Error::InvalidConfig("qmooc needs an indicator".into()))?;
    let ctx = &oracle.context;
    scalar_loop(instance, oracle, config, registry, |y| {
        coverage_cost(id, y, ctx, config.p, &ctx.nadir)
    })
}

/// Union-ranked NSGA-II; reports the archive's pooled nondominated set.
pub fn run_qmoom<T: Scalar>(
    instance: &ProblemInstance<T>,
    oracle: &ParetoOracle<T>,
    config: &RunConfig<T>,
) -> Result<RunRecord<T>> {
    if config.algorithm != Algorithm::Qmoom {
        return Err(Error::InvalidConfig(format!("run_qmoom given {}", config.algorithm)));
    }
    config.validate(instance)?;
    let started = Instant::now();
    let decoder = decoder_for(instance, config)?;
    let ga = GaConfig {
        max_evaluations: config.budget,
        seed: config.seed,
        ..config.ga.clone()
    };
    let evo = evolve(
        |theta: &[T]| decoder.decode(theta),
        &ga,
        decoder.dimension(),
        &oracle.context.nadir,
    )?;
    if let Some(e) = evo.failure {
        return Err(e);
    }
    let solutions = evo
        .archive
        .iter()
        .map(|y| y.origin.ok_or_else(|| Error::Decoder("archive point without origin".into())))
        .collect::<Result<Vec<_>>>()?;
    let termination = evo.stop.label().to_string();
    record(
        instance,
        oracle,
        config,
        started,
        Finished {
            theta: Vec::new(),
            solutions,
            images: evo.archive,
            hv: evo.archive_hv,
            evaluations: evo.evaluations,
            trace: evo.hv_trace,
            termination,
        },
    )
}
