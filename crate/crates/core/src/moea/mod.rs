//! NSGA-II over variational parameter vectors.
//!
//! Each individual decodes to a whole candidate set; ranking pools every individual's solutions,
//! sorts the pool, and credits each individual with its best element (see [`union_rank`]).

mod nsga2;
mod operators;
mod ranking;

pub use nsga2::{evolve, Decoded, Evolution, GaConfig, StopReason};
pub use operators::{binary_tournament, polynomial_mutation, sbx_crossover, Bounds};
pub use ranking::{union_rank, Individual};
