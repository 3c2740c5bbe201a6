//! Seeded benchmark generators and exhaustive ground truth.

mod generate;
mod oracle;

pub use generate::{generate, GeneratorConfig, Interval};
pub use oracle::{brute_force_pareto, ParetoOracle};
