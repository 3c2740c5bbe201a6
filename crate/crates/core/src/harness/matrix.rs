use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bench::{generate, GeneratorConfig, ParetoOracle};
use crate::drivers::{run, Algorithm, Extraction, RunConfig, RunRecord};
use crate::error::{Error, Result};
use crate::indicators::IndicatorId;
use crate::moea::GaConfig;
use crate::optimizers::{OptimizerRegistry, DEFAULT_BUDGET, NELDER_MEAD};
use crate::problem::{ProblemInstance, ProblemKind};

use super::files::{instance_file_name, load_instance, load_or_build_oracle, write_text};

pub const RESULTS_FILE: &str = "results.csv";

/// Solver column value for runs that use no scalar optimizer.
const GA_SOLVER: &str = "nsga2";

/// One algorithm column of the matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoSpec {
    pub algorithm: Algorithm,
    #[serde(default = "default_solver")]
    pub solver: String,
    #[serde(default)]
    pub indicator: Option<IndicatorId>,
    #[serde(default)]
    pub p: f64,
}

fn default_solver() -> String {
    NELDER_MEAD.to_string()
}

impl AlgoSpec {
    pub fn qmoo(solver: &str) -> Self {
        Self {
            algorithm: Algorithm::Qmoo,
            solver: solver.to_string(),
            indicator: None,
            p: 0.0,
        }
    }

    pub fn qmooc(solver: &str, indicator: IndicatorId, p: f64) -> Self {
        Self {
            algorithm: Algorithm::Qmooc,
            solver: solver.to_string(),
            indicator: Some(indicator),
            p,
        }
    }

    pub fn qmoom() -> Self {
        Self {
            algorithm: Algorithm::Qmoom,
            solver: GA_SOLVER.to_string(),
            indicator: None,
            p: 0.0,
        }
    }

    /// Drops fields the algorithm ignores, so equal runs get equal keys.
    fn normalized(&self) -> Self {
        match self.algorithm {
            Algorithm::Qmoo => Self::qmoo(&self.solver),
            Algorithm::Qmoom => Self::qmoom(),
            Algorithm::Qmooc => self.clone(),
        }
    }

    fn indicator_label(&self) -> String {
        self.indicator.map(|i| i.label().to_string()).unwrap_or_default()
    }

    fn p_label(&self) -> String {
        match self.algorithm {
            Algorithm::Qmooc => self.p.to_string(),
            _ => String::new(),
        }
    }
}

/// Every combination of kind, size, instance, run seed and algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMatrix {
    pub kinds: Vec<ProblemKind>,
    pub ns: Vec<usize>,
    #[serde(default = "default_instances")]
    pub instances: usize,
    /// Instance `i` is generated with seed `instance_seed + i`.
    #[serde(default)]
    pub instance_seed: u64,
    #[serde(default = "default_seeds")]
    pub seeds: usize,
    /// Run seed `s` is `run_seed + s`.
    #[serde(default)]
    pub run_seed: u64,
    pub algorithms: Vec<AlgoSpec>,
    #[serde(default = "default_layers")]
    pub layers: usize,
    #[serde(default)]
    pub pareto_points: Option<usize>,
    #[serde(default = "default_budget")]
    pub budget: usize,
    #[serde(default)]
    pub extraction: Extraction,
    #[serde(default)]
    pub ga: GaConfig<f64>,
    /// Adds a same-solver QMOO run for every QMOOC column so deltas can be paired.
    #[serde(default = "default_true")]
    pub pair_baselines: bool,
    pub out_dir: PathBuf,
    /// Worker threads; `None` uses all cores.
    #[serde(default)]
    pub jobs: Option<usize>,
}

fn default_instances() -> usize {
    20
}
fn default_seeds() -> usize {
    40
}
fn default_layers() -> usize {
    5
}
fn default_budget() -> usize {
    DEFAULT_BUDGET
}
fn default_true() -> bool {
    true
}

impl RunMatrix {
    pub fn new(kinds: Vec<ProblemKind>, ns: Vec<usize>, algorithms: Vec<AlgoSpec>, out_dir: PathBuf) -> Self {
        Self {
            kinds,
            ns,
            instances: default_instances(),
            instance_seed: 0,
            seeds: default_seeds(),
            run_seed: 0,
            algorithms,
            layers: default_layers(),
            pareto_points: None,
            budget: default_budget(),
            extraction: Extraction::Exact,
            ga: GaConfig::default(),
            pair_baselines: true,
            out_dir,
            jobs: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn instance_dir(&self) -> PathBuf {
        self.out_dir.join("instances")
    }

    pub fn results_path(&self) -> PathBuf {
        self.out_dir.join(RESULTS_FILE)
    }

    /// Algorithm columns after normalization, baseline pairing and deduplication.
    pub fn columns(&self) -> Vec<AlgoSpec> {
        let mut out: Vec<AlgoSpec> = Vec::new();
        let mut push = |spec: AlgoSpec| {
            if !out.contains(&spec) {
                out.push(spec);
            }
        };
        for spec in &self.algorithms {
            push(spec.normalized());
            if self.pair_baselines && spec.algorithm == Algorithm::Qmooc {
                push(AlgoSpec::qmoo(&spec.solver));
            }
        }
        out
    }

    pub fn total_runs(&self) -> usize {
        self.kinds.len() * self.ns.len() * self.instances * self.seeds * self.columns().len()
    }

    fn run_config(&self, spec: &AlgoSpec, seed: u64) -> RunConfig<f64> {
        RunConfig {
            algorithm: spec.algorithm,
            layers: self.layers,
            pareto_points: self.pareto_points,
            solver: spec.solver.clone(),
            budget: self.budget,
            indicator: spec.indicator,
            p: spec.p,
            ga: self.ga.clone(),
            extraction: self.extraction,
            seed,
        }
    }
}

/// One line of `results.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub algo: String,
    pub solver: String,
    pub indicator: String,
    pub p: String,
    pub kind: String,
    pub n: usize,
    pub instance_id: usize,
    pub run_seed: u64,
    pub hv: f64,
    pub oracle_hv: f64,
    pub rel_hv: f64,
    pub ps: f64,
    pub od: f64,
    pub m: f64,
    pub dm: f64,
    pub d: f64,
    pub ev: f64,
    pub evals: usize,
    pub wall_ms: f64,
    pub termination: String,
}

/// Identity of a run for resumption.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct RunKey {
    kind: String,
    n: usize,
    instance_id: usize,
    algo: String,
    solver: String,
    indicator: String,
    p: String,
    run_seed: u64,
}

impl RunRow {
    fn from_record(spec: &AlgoSpec, instance_id: usize, rec: &RunRecord<f64>) -> Self {
        let ind = &rec.indicators;
        Self {
            algo: spec.algorithm.label().to_string(),
            solver: spec.solver.clone(),
            indicator: spec.indicator_label(),
            p: spec.p_label(),
            kind: rec.kind.label().to_string(),
            n: rec.n,
            instance_id,
            run_seed: rec.config.seed,
            hv: rec.hv,
            oracle_hv: rec.oracle_hv,
            rel_hv: rec.rel_hv,
            ps: ind.ps.value,
            od: ind.od.value,
            m: ind.m.value,
            dm: ind.dm.value,
            d: ind.d.value,
            ev: ind.ev.value,
            evals: rec.evaluations,
            wall_ms: (rec.wall_ms * 1e3).round() / 1e3,
            termination: rec.termination.clone(),
        }
    }

    pub(crate) fn key(&self) -> RunKey {
        RunKey {
            kind: self.kind.clone(),
            n: self.n,
            instance_id: self.instance_id,
            algo: self.algo.clone(),
            solver: self.solver.clone(),
            indicator: self.indicator.clone(),
            p: self.p.clone(),
            run_seed: self.run_seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub description: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunSummary {
    pub written: usize,
    pub skipped: usize,
    pub failures: Vec<CellFailure>,
}

struct Prepared {
    kind: ProblemKind,
    index: usize,
    instance: ProblemInstance<f64>,
    oracle: ParetoOracle<f64>,
}

fn prepare(matrix: &RunMatrix, kind: ProblemKind, n: usize, index: usize) -> Result<Prepared> {
    let dir = matrix.instance_dir();
    let path = dir.join(instance_file_name(kind, n, index));
    let instance = if path.exists() {
        load_instance(&path)?
    } else {
        let config = GeneratorConfig::new(kind, n, matrix.instance_seed + index as u64);
        let instance = generate::<f64>(&config)?;
        write_text(&path, &instance.to_json()?)?;
        instance
    };
    let oracle = load_or_build_oracle(&path, &instance)?;
    Ok(Prepared {
        kind,
        index,
        instance,
        oracle,
    })
}

fn read_done(path: &Path) -> Result<BTreeSet<RunKey>> {
    if !path.exists() {
        return Ok(BTreeSet::new());
    }
    let mut reader = csv::Reader::from_path(path)?;
    let mut keys = BTreeSet::new();
    for row in reader.deserialize::<RunRow>() {
        keys.insert(row?.key());
    }
    Ok(keys)
}

/// Executes every missing cell of the matrix and appends one CSV row per finished run.
///
/// Instance generation and oracle failures abort before any run starts. Failures of individual
/// runs are collected in the summary and do not stop the others.
pub fn cmd_run(matrix: &RunMatrix, registry: &OptimizerRegistry<f64>) -> Result<RunSummary> {
    for spec in &matrix.algorithms {
        if spec.algorithm.uses_solver() && !registry.contains(&spec.solver) {
            return Err(Error::UnknownOptimizer(spec.solver.clone()));
        }
    }
    let dir = matrix.instance_dir();
    fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(matrix.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;

    let slots: Vec<(ProblemKind, usize, usize)> = matrix
        .kinds
        .iter()
        .flat_map(|&k| {
            matrix
                .ns
                .iter()
                .flat_map(move |&n| (0..matrix.instances).map(move |i| (k, n, i)))
        })
        .collect();
    let prepared: Vec<Prepared> = pool.install(|| {
        slots
            .par_iter()
            .map(|&(k, n, i)| prepare(matrix, k, n, i))
            .collect::<Result<_>>()
    })?;

    let results = matrix.results_path();
    let done = read_done(&results)?;
    let columns = matrix.columns();
    let mut tasks = Vec::new();
    let mut skipped = 0;
    for (pi, prep) in prepared.iter().enumerate() {
        for s in 0..matrix.seeds {
            let seed = matrix.run_seed + s as u64;
            for spec in &columns {
                let key = RunKey {
                    kind: prep.kind.label().to_string(),
                    n: prep.instance.n,
                    instance_id: prep.index,
                    algo: spec.algorithm.label().to_string(),
                    solver: spec.solver.clone(),
                    indicator: spec.indicator_label(),
                    p: spec.p_label(),
                    run_seed: seed,
                };
                if done.contains(&key) {
                    skipped += 1;
                } else {
                    tasks.push((pi, seed, spec));
                }
            }
        }
    }
    log::info!("{} runs to execute, {} already recorded", tasks.len(), skipped);

    let fresh = !results.exists() || fs::metadata(&results).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&results)
        .map_err(|e| Error::io(&results, e))?;
    let writer = Mutex::new(
        csv::WriterBuilder::new()
            .has_headers(fresh)
            .from_writer(file),
    );
    let failures = Mutex::new(Vec::new());
    let written = std::sync::atomic::AtomicUsize::new(0);

    pool.install(|| {
        tasks.par_iter().for_each(|&(pi, seed, spec)| {
            let prep = &prepared[pi];
            let config = matrix.run_config(spec, seed);
            let outcome = run(&prep.instance, &prep.oracle, &config, registry).and_then(|rec| {
                let row = RunRow::from_record(spec, prep.index, &rec);
                let mut w = writer.lock().expect("writer poisoned");
                w.serialize(&row)?;
                w.flush().map_err(|e| Error::io(&results, e))
            });
            match outcome {
                Ok(()) => {
                    written.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                }
                Err(e) => {
                    let description = format!(
                        "{} n={} instance={} {} {} {} p={} seed={}",
                        prep.kind,
                        prep.instance.n,
                        prep.index,
                        spec.algorithm,
                        spec.solver,
                        spec.indicator_label(),
                        spec.p_label(),
                        seed
                    );
                    log::warn!("run failed: {description}: {e}");
                    failures.lock().expect("failure list poisoned").push(CellFailure {
                        description,
                        error: e.to_string(),
                    });
                }
            }
        })
    });

    let mut failures = failures.into_inner().expect("failure list poisoned");
    failures.sort_by(|a, b| a.description.cmp(&b.description));
    Ok(RunSummary {
        written: written.into_inner(),
        skipped,
        failures,
    })
}
