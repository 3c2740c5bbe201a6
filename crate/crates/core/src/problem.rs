//! Binary decision vectors, objective specifications and problem instances.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest variable count for which the decision space is ever enumerated.
pub const MAX_ENUMERABLE_VARIABLES: usize = 24;

/// A point of the decision space `{0,1}^n`.
///
/// Bit `i` (zero-based) of `index` is the variable `x_{i+1}`, so `x_1` is the least significant
/// bit. The same convention fixes the basis-state labelling of the simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Solution {
    index: usize,
    n: usize,
}

impl Solution {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if n > usize::BITS as usize - 1 {
            return Err(Error::Capability(format!("{n} variables do not fit an index")));
        }
        if index >> n != 0 {
            return Err(Error::InvalidConfig(format!(
                "solution index {index} out of range for n = {n}"
            )));
        }
        Ok(Self { index, n })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let index = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i));
        Self::new(index, bits.len())
    }

    /// Solution for an index already known to be in range.
    #[inline]
    pub(crate) fn unchecked(index: usize, n: usize) -> Self {
        debug_assert!(index >> n == 0);
        Self { index, n }
    }

    #[inline]
    pub fn index(&self) -> usize {
        self.index
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Value of `x_{i+1}`.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        (self.index >> i) & 1 == 1
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.bit(i)).collect()
    }

    /// Flips `x_{i+1}`.
    pub fn flip(&self, i: usize) -> Self {
        Self::unchecked(self.index ^ (1 << i), self.n)
    }
}

impl fmt::Display for Solution {
    /// Prints `x_1 … x_n` left to right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One objective function on `{0,1}^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[serde(bound(deserialize = "T: Scalar"))]
pub enum ObjectiveSpec<T> {
    /// `Σ c_i x_i`.
    Linear { c: Vec<T> },
    /// `xᵀ J x + xᵀ h + c0` with symmetric `J` stored as rows.
    Quadratic {
        #[serde(rename = "J")]
        j: Vec<Vec<T>>,
        h: Vec<T>,
        c0: T,
    },
}

impl<T: Scalar> ObjectiveSpec<T> {
    pub fn n(&self) -> usize {
        match self {
            ObjectiveSpec::Linear { c } => c.len(),
            ObjectiveSpec::Quadratic { h, .. } => h.len(),
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, ObjectiveSpec::Linear { .. })
    }

    /// Value at the solution with the given index (no range check).
    pub fn value_at(&self, index: usize) -> T {
        match self {
            ObjectiveSpec::Linear { c } => c
                .iter()
                .enumerate()
                .filter(|(i, _)| (index >> i) & 1 == 1)
                .map(|(_, &ci)| ci)
                .sum(),
            ObjectiveSpec::Quadratic { j, h, c0 } => {
                let mut acc = *c0;
                for (i, row) in j.iter().enumerate() {
                    if (index >> i) & 1 == 0 {
                        continue;
                    }
                    acc = acc + h[i];
                    for (k, &jik) in row.iter().enumerate() {
                        if (index >> k) & 1 == 1 {
                            acc = acc + jik;
                        }
                    }
                }
                acc
            }
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            ObjectiveSpec::Linear { c } => {
                Error::check_len("linear coefficients", n, c.len())?;
                if c.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidConfig("non-finite coefficient".into()));
                }
            }
            ObjectiveSpec::Quadratic { j, h, c0 } => {
                Error::check_len("affine vector", n, h.len())?;
                Error::check_len("coupling rows", n, j.len())?;
                for (i, row) in j.iter().enumerate() {
                    Error::check_len("coupling row", n, row.len())?;
                    for (k, &v) in row.iter().enumerate() {
                        if !v.is_finite() {
                            return Err(Error::InvalidConfig("non-finite coupling".into()));
                        }
                        if v != j[k][i] {
                            return Err(Error::InvalidConfig(format!(
                                "coupling matrix not symmetric at ({i}, {k})"
                            )));
                        }
                    }
                }
                if h.iter().any(|v| !v.is_finite()) || !c0.is_finite() {
                    return Err(Error::InvalidConfig("non-finite affine term".into()));
                }
            }
        }
        Ok(())
    }
}

/// Benchmark family an instance was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProblemKind {
    #[serde(rename = "UMOCO-1")]
    Umoco1,
    #[serde(rename = "UMOCO-2")]
    Umoco2,
    #[serde(rename = "AFM")]
    Afm,
    #[serde(rename = "FM-AFM")]
    FmAfm,
    #[serde(rename = "custom")]
    Custom,
}

impl ProblemKind {
    pub const BENCHMARKS: [ProblemKind; 4] = [
        ProblemKind::Umoco1,
        ProblemKind::Umoco2,
        ProblemKind::Afm,
        ProblemKind::FmAfm,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ProblemKind::Umoco1 => "UMOCO-1",
            ProblemKind::Umoco2 => "UMOCO-2",
            ProblemKind::Afm => "AFM",
            ProblemKind::FmAfm => "FM-AFM",
            ProblemKind::Custom => "custom",
        }
    }

    /// Lower-case label used in file names and on the command line.
    pub fn slug(&self) -> String {
        self.label().to_ascii_lowercase()
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "umoco1" => Ok(ProblemKind::Umoco1),
            "umoco2" => Ok(ProblemKind::Umoco2),
            "afm" => Ok(ProblemKind::Afm),
            "fmafm" => Ok(ProblemKind::FmAfm),
            "custom" => Ok(ProblemKind::Custom),
            _ => Err(Error::InvalidConfig(format!("unknown problem kind `{s}`"))),
        }
    }
}

/// `K` objectives over `n` binary variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct ProblemInstance<T> {
    pub kind: ProblemKind,
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub seed: u64,
    pub objectives: Vec<ObjectiveSpec<T>>,
}

impl<T: Scalar> ProblemInstance<T> {
    pub fn new(kind: ProblemKind, seed: u64, objectives: Vec<ObjectiveSpec<T>>) -> Result<Self> {
        let n = objectives.first().map(ObjectiveSpec::n).unwrap_or(0);
        let instance = Self {
            kind,
            n,
            k: objectives.len(),
            seed,
            objectives,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least two objectives, got {}",
                self.k
            )));
        }
        Error::check_len("objective count", self.k, self.objectives.len())?;
        if self.n == 0 {
            return Err(Error::InvalidConfig("need at least one variable".into()));
        }
        for objective in &self.objectives {
            objective.validate(self.n)?;
        }
        Ok(())
    }

    pub fn is_linear(&self) -> bool {
        self.objectives.iter().all(ObjectiveSpec::is_linear)
    }

    /// `f(x)`.
    pub fn evaluate(&self, x: &Solution) -> Result<ObjectivePoint<T>> {
        Error::check_len("solution length", self.n, x.n())?;
        Ok(self.evaluate_index(x.index()).with_origin(*x))
    }

    /// `f` at an index known to be below `2^n`.
    pub fn evaluate_index(&self, index: usize) -> ObjectivePoint<T> {
        ObjectivePoint::new(self.objectives.iter().map(|o| o.value_at(index)).collect())
            .with_origin(Solution::unchecked(index, self.n))
    }

    /// Number of decision vectors, if enumerable.
    pub fn space_size(&self) -> Result<usize> {
        if self.n > MAX_ENUMERABLE_VARIABLES {
            return Err(Error::Capability(format!(
                "n = {} exceeds the enumeration limit of {MAX_ENUMERABLE_VARIABLES}",
                self.n
            )));
        }
        Ok(1usize << self.n)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let instance: Self = serde_json::from_str(text)?;
        instance.validate()?;
        Ok(instance)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// `f_1 = Σ 2^{i-1} x_i`, `f_2 = -f_1`: every image point lies on a line of slope −1, so the
/// whole image is nondominated.
pub fn line_instance<T: Scalar>(n: usize) -> Result<ProblemInstance<T>> {
    let c: Vec<T> = (0..n).map(|i| T::of((1u64 << i) as f64)).collect();
    let neg = c.iter().map(|&v| -v).collect();
    ProblemInstance::new(
        ProblemKind::Custom,
        0,
        vec![ObjectiveSpec::Linear { c }, ObjectiveSpec::Linear { c: neg }],
    )
}

/// A point of the objective space, optionally tagged with the solution it is the image of.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
pub struct ObjectivePoint<T> {
    pub values: Vec<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Solution>,
}

impl<T: Scalar> ObjectivePoint<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self {
            values,
            origin: None,
        }
    }

    pub fn with_origin(mut self, origin: Solution) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

impl<T> AsRef<[T]> for ObjectivePoint<T> {
    fn as_ref(&self) -> &[T] {
        &self.values
    }
}

impl<T: Scalar> From<Vec<T>> for ObjectivePoint<T> {
    fn from(values: Vec<T>) -> Self {
        Self::new(values)
    }
}
