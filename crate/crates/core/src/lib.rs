//! Multi-objective variational quantum optimization on a classical statevector simulator.
//!
//! The crate covers the whole pipeline: benchmark generators and exhaustive oracles
//! ([`bench`]), Pareto machinery ([`pareto`]), hypervolume and coverage indicators
//! ([`indicators`]), the layered phase/mixer ansatz ([`qsim`]), scalar minimizers
//! ([`optimizers`]), NSGA-II with union ranking ([`moea`]), the three algorithm loops
//! ([`drivers`]) and the run-matrix harness behind the CLI ([`harness`]).
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix `f64`, which
//! is what the harness and command line use.

pub mod bench;
pub mod drivers;
pub mod error;
pub mod harness;
pub mod indicators;
pub mod moea;
pub mod optimizers;
pub mod pareto;
pub mod problem;
pub mod qsim;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use problem::{ObjectiveSpec, ProblemKind, Solution};
pub use scalar::Scalar;

pub type ProblemInstance = problem::ProblemInstance<f64>;
pub type ObjectivePoint = problem::ObjectivePoint<f64>;
pub type ReferenceContext = indicators::ReferenceContext<f64>;
pub type StateVector = qsim::StateVector<f64>;
pub type PhaseTable = qsim::PhaseTable<f64>;
pub type AnsatzParams = qsim::AnsatzParams<f64>;
pub type OptimizerResult = optimizers::OptimizerResult<f64>;
pub type Individual = moea::Individual<f64>;
pub type GaConfig = moea::GaConfig<f64>;
pub type RunRecord = drivers::RunRecord<f64>;
pub type ParetoOracle = bench::ParetoOracle<f64>;
