use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ProblemInstance;
use crate::scalar::Scalar;

use super::state::{init_plus_state, StateVector};

/// Angles of an `L`-layer, `K`-objective ansatz laid out as
/// `(γ_{1,1}, β_{1,1}, γ_{1,2}, β_{1,2}, …, γ_{L,K}, β_{L,K})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct AnsatzParams<T> {
    layers: usize,
    objectives: usize,
    angles: Vec<T>,
}

impl<T: Scalar> AnsatzParams<T> {
    pub fn new(layers: usize, objectives: usize, angles: Vec<T>) -> Result<Self> {
        if layers == 0 || objectives == 0 {
            return Err(Error::InvalidConfig(
                "ansatz needs at least one layer and one objective".into(),
            ));
        }
        Error::check_len("ansatz angles", Self::dimension(layers, objectives), angles.len())?;
        Ok(Self {
            layers,
            objectives,
            angles,
        })
    }

    pub fn zeros(layers: usize, objectives: usize) -> Result<Self> {
        Self::new(
            layers,
            objectives,
            vec![T::zero(); Self::dimension(layers, objectives)],
        )
    }

    /// `2·K·L`.
    pub const fn dimension(layers: usize, objectives: usize) -> usize {
        2 * layers * objectives
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn objectives(&self) -> usize {
        self.objectives
    }

    pub fn angles(&self) -> &[T] {
        &self.angles
    }

    /// `γ_{l,k}` with zero-based `layer` and `objective`.
    pub fn gamma(&self, layer: usize, objective: usize) -> T {
        self.angles[2 * (layer * self.objectives + objective)]
    }

    pub fn beta(&self, layer: usize, objective: usize) -> T {
        self.angles[2 * (layer * self.objectives + objective) + 1]
    }
}

/// `f_k(x)` for every objective and every basis state; the diagonal of each `H_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable<T> {
    n: usize,
    values: Vec<Vec<T>>,
}

impl<T: Scalar> PhaseTable<T> {
    pub fn from_instance(instance: &ProblemInstance<T>) -> Result<Self> {
        let size = instance.space_size()?;
        let values = instance
            .objectives
            .iter()
            .map(|o| (0..size).map(|x| o.value_at(x)).collect())
            .collect();
        Ok(Self {
            n: instance.n,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn objectives(&self) -> usize {
        self.values.len()
    }

    pub fn objective(&self, k: usize) -> &[T] {
        &self.values[k]
    }
}

/// Prepares `U(θ)|+⟩^{⊗n}` with `U = U_L ⋯ U_1` and
/// `U_l = U_M(β_{l,K}) U_K(γ_{l,K}) ⋯ U_M(β_{l,1}) U_1(γ_{l,1})`.
pub fn apply_ansatz<T: Scalar>(
    params: &AnsatzParams<T>,
    tables: &PhaseTable<T>,
) -> Result<StateVector<T>> {
    Error::check_len("ansatz objectives", tables.objectives(), params.objectives())?;
    let mut state = init_plus_state(tables.n())?;
    for layer in 0..params.layers() {
        for k in 0..params.objectives() {
            state.apply_phase(tables.objective(k), params.gamma(layer, k))?;
            state.debug_check_norm();
            state.apply_mixer(params.beta(layer, k));
            state.debug_check_norm();
        }
    }
    Ok(state)
}
