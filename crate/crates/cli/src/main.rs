//! `qmoo`: generate instances, build oracles, run experiment matrices and summarize results.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qmoo::drivers::Algorithm;
use qmoo::harness::{self, AlgoSpec, ReportMode, RunMatrix};
use qmoo::indicators::IndicatorId;
use qmoo::optimizers::OptimizerRegistry;
use qmoo::{Error, ProblemKind};

const EXIT_USAGE: u8 = 1;
const EXIT_CAPABILITY: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "qmoo", version, about = "Multi-objective variational quantum optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write benchmark instances as JSON files.
    Gen(GenArgs),
    /// Enumerate instances and write their Pareto oracles next to them.
    Oracle(OracleArgs),
    /// Execute a run matrix and append results to results.csv.
    Run(RunArgs),
    /// Aggregate results.csv into box-plot or paired-delta data.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct OutDir {
    /// Output directory.
    #[arg(long, env = "QMOO_OUT_DIR", default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    kind: ProblemKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Seed of the first instance; instance i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Instance files.
    #[arg(required = true)]
    instances: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON matrix description; other matrix flags are ignored when given.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "UMOCO-1")]
    kind: Vec<ProblemKind>,
    #[arg(long, value_delimiter = ',', default_value = "10")]
    n: Vec<usize>,
    /// Instances per (kind, n).
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Seed of the first instance.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run seeds per instance.
    #[arg(long, default_value_t = 40)]
    seeds: usize,
    /// Seed of the first run.
    #[arg(long, default_value_t = 0)]
    run_seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "qmoo")]
    algo: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "nelder-mead")]
    solver: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "ps")]
    indicator: Vec<IndicatorId>,
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    p: Vec<f64>,
    #[arg(long, default_value_t = 5)]
    layers: usize,
    /// Candidate-set size (default n + K).
    #[arg(long)]
    pareto_points: Option<usize>,
    #[arg(long, default_value_t = qmoo::optimizers::DEFAULT_BUDGET)]
    budget: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    out: OutDir,
}

#[derive(Debug, Args)]
struct ReportArgs {
    results: PathBuf,
    #[arg(long, default_value = "boxdata")]
    mode: ReportMode,
    #[command(flatten)]
    out: OutDir,
}

impl RunArgs {
    fn matrix(&self) -> Result<RunMatrix, Error> {
        if let Some(path) = &self.matrix {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            return RunMatrix::from_json(&text);
        }
        let mut algorithms = Vec::new();
        for &algo in &self.algo {
            match algo {
                Algorithm::Qmoo => algorithms.extend(self.solver.iter().map(|s| AlgoSpec::qmoo(s))),
                Algorithm::Qmooc => {
                    for s in &self.solver {
                        for &id in &self.indicator {
                            for &p in &self.p {
                                algorithms.push(AlgoSpec::qmooc(s, id, p));
                            }
                        }
                    }
                }
                Algorithm::Qmoom => algorithms.push(AlgoSpec::qmoom()),
            }
        }
        Ok(RunMatrix {
            instances: self.count,
            instance_seed: self.seed,
            seeds: self.seeds,
            run_seed: self.run_seed,
            layers: self.layers,
            pareto_points: self.pareto_points,
            budget: self.budget,
            jobs: self.jobs,
            ..RunMatrix::new(self.kind.clone(), self.n.clone(), algorithms, self.out.out.clone())
        })
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Capability(_) => ExitCode::from(EXIT_CAPABILITY),
        _ => ExitCode::from(EXIT_USAGE),
    }
}

fn print_paths(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.display());
    }
}

fn execute(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Gen(a) => {
            print_paths(&harness::cmd_gen(a.kind, a.n, a.count, a.seed, &a.out.out)?);
        }
        Command::Oracle(a) => {
            let written = a
                .instances
                .iter()
                .map(|p| harness::cmd_oracle(p))
                .collect::<Result<Vec<_>, _>>()?;
            print_paths(&written);
        }
        Command::Run(a) => {
            let matrix = a.matrix()?;
            let summary = harness::cmd_run(&matrix, &OptimizerRegistry::with_defaults())?;
            println!(
                "{}: {} written, {} already present, {} failed",
                matrix.results_path().display(),
                summary.written,
                summary.skipped,
                summary.failures.len()
            );
            if !summary.failures.is_empty() {
                for f in &summary.failures {
                    eprintln!("failed: {}: {}", f.description, f.error);
                }
                return Ok(ExitCode::from(EXIT_PARTIAL));
            }
        }
        Command::Report(a) => {
            let summary = harness::cmd_report(Path::new(&a.results), a.mode, &a.out.out)?;
            for u in &summary.unmatched {
                eprintln!("unmatched: {u}");
            }
            println!("{}: {} rows", summary.path.display(), summary.rows);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    log::debug!("{:?}", cli.command);
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
