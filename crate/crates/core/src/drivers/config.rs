use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::{IndicatorId, IndicatorValues};
use crate::moea::GaConfig;
use crate::optimizers::{DEFAULT_BUDGET, NELDER_MEAD};
use crate::problem::{ObjectivePoint, ProblemInstance, ProblemKind, Solution};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Qmoo,
    Qmooc,
    Qmoom,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Qmoo, Algorithm::Qmooc, Algorithm::Qmoom];

    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Qmoo => "qmoo",
            Algorithm::Qmooc => "qmooc",
            Algorithm::Qmoom => "qmoom",
        }
    }

    /// Whether a scalar optimizer drives the run.
    pub fn uses_solver(&self) -> bool {
        !matches!(self, Algorithm::Qmoom)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm `{s}`")))
    }
}

/// How the candidate set is read off the prepared state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extraction {
    /// The `P` most probable basis states, from exact probabilities.
    #[default]
    Exact,
    /// The `P` most frequent outcomes among this many measurements.
    Shots(u64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct RunConfig<T> {
    pub algorithm: Algorithm,
    pub layers: usize,
    /// Candidate-set size; `None` means `n + K`.
    pub pareto_points: Option<usize>,
    pub solver: String,
    /// Evaluation budget. For QMOOM this caps decoder calls.
    pub budget: usize,
    pub indicator: Option<IndicatorId>,
    pub p: T,
    pub ga: GaConfig<T>,
    pub extraction: Extraction,
    pub seed: u64,
}

impl<T: Scalar> RunConfig<T> {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        Self {
            algorithm,
            layers: 5,
            pareto_points: None,
            solver: NELDER_MEAD.to_string(),
            budget: DEFAULT_BUDGET,
            indicator: None,
            p: T::zero(),
            ga: GaConfig::default(),
            extraction: Extraction::Exact,
            seed,
        }
    }

    pub fn qmooc(indicator: IndicatorId, p: T, seed: u64) -> Self {
        Self {
            indicator: Some(indicator),
            p,
            ..Self::new(Algorithm::Qmooc, seed)
        }
    }

    pub fn points_for(&self, instance: &ProblemInstance<T>) -> usize {
        self.pareto_points.unwrap_or(instance.n + instance.k)
    }

    /// Parameter count `2KL`.
    pub fn dimension(&self, instance: &ProblemInstance<T>) -> usize {
        2 * instance.k * self.layers
    }

    pub fn validate(&self, instance: &ProblemInstance<T>) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.layers == 0 {
            return bad("at least one layer is required".into());
        }
        let p_points = self.points_for(instance);
        if p_points == 0 {
            return bad("candidate-set size must be positive".into());
        }
        if instance.n <= usize::BITS as usize - 1 && p_points > 1usize << instance.n {
            return bad(format!("{p_points} candidates exceed the 2^{} solutions", instance.n));
        }
        if self.budget == 0 {
            return bad("budget must be positive".into());
        }
        if !(self.p >= T::zero() && self.p <= T::one()) {
            return bad(format!("weight p = {} outside [0, 1]", self.p));
        }
        if self.algorithm == Algorithm::Qmooc && self.indicator.is_none() {
            return bad("qmooc needs an indicator".into());
        }
        if let Extraction::Shots(0) = self.extraction {
            return bad("shot count must be positive".into());
        }
        if self.algorithm == Algorithm::Qmoom {
            self.ga.validate()?;
        }
        Ok(())
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct RunRecord<T> {
    pub config: RunConfig<T>,
    pub kind: ProblemKind,
    pub n: usize,
    pub instance_seed: u64,
    /// Parameters of the reported set (the incumbent for QMOO/QMOOC; empty for QMOOM, whose
    /// output pools several individuals).
    pub theta: Vec<T>,
    pub solutions: Vec<Solution>,
    pub images: Vec<ObjectivePoint<T>>,
    pub hv: T,
    pub indicators: IndicatorValues<T>,
    pub oracle_hv: T,
    pub rel_hv: T,
    pub evaluations: usize,
    pub wall_ms: f64,
    /// Incumbent cost per evaluation (QMOO/QMOOC) or archive hypervolume per generation
    /// (QMOOM).
    pub trace: Vec<T>,
    pub termination: String,
}

impl<T: Scalar> RunRecord<T> {
    /// Compares everything except wall time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let mut a = self.clone();
        a.wall_ms = other.wall_ms;
        a == *other
    }
}
