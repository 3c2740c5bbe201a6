//! The four bicriteria benchmark families.
//!
//! Random draws come from [`crate::rng::stream`] with one stream per `(objective, block)`, see
//! [`crate::rng`]. Quadratic couplings are drawn on the upper triangle (diagonal included) in
//! row-major order and mirrored.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{ObjectiveSpec, ProblemInstance, ProblemKind};
use crate::rng::{coefficient_block, stream, CoefficientBlock, Stream};
use crate::scalar::Scalar;

/// Open sampling interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    fn sample(&self, rng: &mut Stream) -> f64 {
        rng.random_range(self.lo..self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub kind: ProblemKind,
    pub n: usize,
    pub seed: u64,
    /// Ferromagnetic coupling interval, `lo < hi < 0`.
    pub fm_coupling: Interval,
    /// Antiferromagnetic coupling interval, `0 < lo < hi`.
    pub afm_coupling: Interval,
    /// Admissible angle between the two UMOCO-2 coefficient vectors, in degrees.
    pub umoco2_angle_deg: (f64, f64),
    /// Give up on UMOCO-2 rejection sampling after this many draws.
    pub max_draws: usize,
}

impl GeneratorConfig {
    pub fn new(kind: ProblemKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            fm_coupling: Interval::new(-1.0, -0.5),
            afm_coupling: Interval::new(0.5, 1.0),
            umoco2_angle_deg: (90.0, 150.0),
            max_draws: 1_000_000,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!(
                "benchmarks need n >= 2, got {}",
                self.n
            )));
        }
        let fm = self.fm_coupling;
        if !(fm.lo < fm.hi && fm.hi < 0.0) {
            return Err(Error::InvalidConfig(format!(
                "ferromagnetic interval needs lo < hi < 0, got ({}, {})",
                fm.lo, fm.hi
            )));
        }
        let afm = self.afm_coupling;
        if !(0.0 < afm.lo && afm.lo < afm.hi) {
            return Err(Error::InvalidConfig(format!(
                "antiferromagnetic interval needs 0 < lo < hi, got ({}, {})",
                afm.lo, afm.hi
            )));
        }
        let (a, b) = self.umoco2_angle_deg;
        if !(0.0..=180.0).contains(&a) || !(a..=180.0).contains(&b) {
            return Err(Error::InvalidConfig(format!("angle window ({a}, {b}) invalid")));
        }
        Ok(())
    }

    fn rng(&self, objective: usize, block: CoefficientBlock) -> Stream {
        stream(self.seed, coefficient_block(objective, block))
    }
}

/// Draws an instance; deterministic in `(kind, n, seed)` and the intervals.
pub fn generate<T: Scalar>(config: &GeneratorConfig) -> Result<ProblemInstance<T>> {
    config.validate()?;
    let objectives = match config.kind {
        ProblemKind::Umoco1 => umoco1(config),
        ProblemKind::Umoco2 => umoco2(config)?,
        ProblemKind::FmAfm => vec![
            coupled(config, 0, config.fm_coupling),
            coupled(config, 1, config.afm_coupling),
        ],
        ProblemKind::Afm => vec![diagonal(config), coupled(config, 1, config.afm_coupling)],
        ProblemKind::Custom => {
            return Err(Error::InvalidConfig(
                "custom instances are not generated".into(),
            ))
        }
    };
    let objectives = objectives.into_iter().map(convert).collect();
    ProblemInstance::new(config.kind, config.seed, objectives)
}

fn convert<T: Scalar>(spec: ObjectiveSpec<f64>) -> ObjectiveSpec<T> {
    let v = |xs: Vec<f64>| xs.into_iter().map(T::of).collect::<Vec<T>>();
    match spec {
        ObjectiveSpec::Linear { c } => ObjectiveSpec::Linear { c: v(c) },
        ObjectiveSpec::Quadratic { j, h, c0 } => ObjectiveSpec::Quadratic {
            j: j.into_iter().map(v).collect(),
            h: v(h),
            c0: T::of(c0),
        },
    }
}

fn uniform_vec(rng: &mut Stream, n: usize, interval: Interval) -> Vec<f64> {
    (0..n).map(|_| interval.sample(rng)).collect()
}

/// `c¹ ~ U(−1,1)ⁿ`, `c² = −½c¹ + ½d` with `d ~ U(−1,1)ⁿ`.
fn umoco1(config: &GeneratorConfig) -> Vec<ObjectiveSpec<f64>> {
    let unit = Interval::new(-1.0, 1.0);
    let c1 = uniform_vec(&mut config.rng(0, CoefficientBlock::Linear), config.n, unit);
    let d = uniform_vec(&mut config.rng(1, CoefficientBlock::Conflict), config.n, unit);
    let c2 = c1.iter().zip(&d).map(|(a, b)| -0.5 * a + 0.5 * b).collect();
    vec![ObjectiveSpec::Linear { c: c1 }, ObjectiveSpec::Linear { c: c2 }]
}

/// Integer coefficients in `{−10n, …, 10n}`, redrawn until the angle between the vectors lies in
/// the configured window, then divided by `10n`.
fn umoco2(config: &GeneratorConfig) -> Result<Vec<ObjectiveSpec<f64>>> {
    let bound = 10 * config.n as i64;
    let mut rng1 = config.rng(0, CoefficientBlock::Linear);
    let mut rng2 = config.rng(1, CoefficientBlock::Linear);
    let (lo, hi) = config.umoco2_angle_deg;
    for _ in 0..config.max_draws {
        let c1: Vec<i64> = (0..config.n)
            .map(|_| rng1.random_range(-bound..=bound))
            .collect();
        let c2: Vec<i64> = (0..config.n)
            .map(|_| rng2.random_range(-bound..=bound))
            .collect();
        let Some(angle) = angle_deg(&c1, &c2) else {
            continue;
        };
        if (lo..=hi).contains(&angle) {
            let scale = |c: Vec<i64>| c.into_iter().map(|v| v as f64 / bound as f64).collect();
            return Ok(vec![
                ObjectiveSpec::Linear { c: scale(c1) },
                ObjectiveSpec::Linear { c: scale(c2) },
            ]);
        }
    }
    Err(Error::Generator(format!(
        "no UMOCO-2 coefficient pair within {lo}..{hi} degrees after {} draws",
        config.max_draws
    )))
}

/// Angle in degrees between two integer vectors, `None` if either is zero.
pub(crate) fn angle_deg(a: &[i64], b: &[i64]) -> Option<f64> {
    let dot: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: i64 = a.iter().map(|x| x * x).sum();
    let nb: i64 = b.iter().map(|x| x * x).sum();
    if na == 0 || nb == 0 {
        return None;
    }
    let cos = (dot as f64 / ((na as f64).sqrt() * (nb as f64).sqrt())).clamp(-1.0, 1.0);
    Some(cos.acos().to_degrees())
}

fn symmetric(rng: &mut Stream, n: usize, interval: Interval) -> Vec<Vec<f64>> {
    let mut j = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in a..n {
            let v = interval.sample(rng);
            j[a][b] = v;
            j[b][a] = v;
        }
    }
    j
}

/// `J ~ U(interval)` symmetric, `h = g − ½ 𝟙ᵀJ` with `g ~ U(−1,1)ⁿ`, `c0 = 0`.
fn coupled(config: &GeneratorConfig, objective: usize, interval: Interval) -> ObjectiveSpec<f64> {
    let n = config.n;
    let j = symmetric(&mut config.rng(objective, CoefficientBlock::Coupling), n, interval);
    let g = uniform_vec(
        &mut config.rng(objective, CoefficientBlock::Field),
        n,
        Interval::new(-1.0, 1.0),
    );
    let h = (0..n)
        .map(|col| g[col] - 0.5 * (0..n).map(|row| j[row][col]).sum::<f64>())
        .collect();
    ObjectiveSpec::Quadratic { j, h, c0: 0.0 }
}

/// Diagonal `J ~ U(afm)`, `h = −2 vᵀJ` with `v ~ U(0,1)ⁿ`, `c0 = 0`.
fn diagonal(config: &GeneratorConfig) -> ObjectiveSpec<f64> {
    let n = config.n;
    let mut rng = config.rng(0, CoefficientBlock::Coupling);
    let mut j = vec![vec![0.0; n]; n];
    for (i, row) in j.iter_mut().enumerate() {
        row[i] = config.afm_coupling.sample(&mut rng);
    }
    let v = uniform_vec(
        &mut config.rng(0, CoefficientBlock::Offset),
        n,
        Interval::new(0.0, 1.0),
    );
    let h = (0..n).map(|i| -2.0 * v[i] * j[i][i]).collect();
    ObjectiveSpec::Quadratic { j, h, c0: 0.0 }
}
