//! Seed streams.
//!
//! Every random quantity is drawn from a ChaCha20 generator seeded with a 64-bit master seed and
//! positioned on a numbered stream (`ChaCha20Rng::set_stream`). Distinct consumers use distinct
//! stream ids, so adding a draw in one place never shifts the values seen elsewhere.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type Stream = ChaCha20Rng;

/// Generator for `(seed, stream)`.
pub fn stream(seed: u64, stream: u64) -> Stream {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream ids used by the benchmark generators: one per `(objective, coefficient block)`.
pub(crate) fn coefficient_block(objective: usize, block: CoefficientBlock) -> u64 {
    ((objective as u64) << 8) | block as u64
}

#[derive(Debug, Clone, Copy)]
#[repr(u64)]
pub(crate) enum CoefficientBlock {
    Linear = 1,
    Coupling = 2,
    Field = 3,
    Offset = 4,
    Conflict = 5,
}

/// Stream ids used inside one optimization run.
pub(crate) mod run_streams {
    pub const INITIAL_PARAMETERS: u64 = 0x100;
    pub const SHOTS: u64 = 0x200;
    pub const SELECTION: u64 = 0x300;
    pub const CROSSOVER: u64 = 0x400;
    pub const MUTATION: u64 = 0x500;
}
