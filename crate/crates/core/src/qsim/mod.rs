//! Exact statevector simulation of the layered phase/mixer ansatz.
//!
//! Basis state `|x⟩` sits at amplitude index `x.index()`, so qubit `j` is bit `j` of the index.

mod ansatz;
mod extract;
mod state;

pub use ansatz::{apply_ansatz, AnsatzParams, PhaseTable};
pub use extract::{sample_shots, top_p_from_counts, top_p_solutions, ShotCounts};
pub use state::{init_plus_state, StateVector, MAX_QUBITS, NORM_TOLERANCE};
