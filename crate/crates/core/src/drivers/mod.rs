//! The three algorithm loops and the set-level order they rest on.
//!
//! * QMOO minimizes `−HV(Y(θ))` with a scalar optimizer.
//! * QMOOC adds a weighted coverage indicator to that cost.
//! * QMOOM evolves a population of parameter vectors with union-ranked NSGA-II.

mod config;
mod decode;
mod run;
mod sets;

pub use config::{Algorithm, Extraction, RunConfig, RunRecord};
pub use decode::{decode, AnsatzDecoder};
pub use run::{run, run_qmoo, run_qmooc, run_qmoom};
pub use sets::{parameter_image, set_dominates, vectorize};
