//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! The experiment criteria (5, 6, 9) run desk-scale matrices through the same harness the
//! command line uses, so they take minutes in an optimized build.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use qmoo::bench::{brute_force_pareto, generate, GeneratorConfig};
use qmoo::drivers::{run_qmoom, set_dominates, Algorithm, RunConfig};
use qmoo::harness::{cmd_run, delta_pairs, read_rows, AlgoSpec, RunMatrix, RunRow};
use qmoo::indicators::{hypervolume, IndicatorId};
use qmoo::moea::GaConfig;
use qmoo::optimizers::{OptimizerRegistry, NELDER_MEAD};
use qmoo::pareto::{crowding_distance, nondominated_filter, nondominated_sort};
use qmoo::problem::line_instance;
use qmoo::qsim::{apply_ansatz, PhaseTable};
use qmoo::{AnsatzParams, ObjectiveSpec, ProblemInstance, ProblemKind, Solution};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

type Outcome = (bool, String);

fn rng(seed: u64) -> qmoo::rng::Stream {
    qmoo::rng::stream(seed, 0xacc)
}

// 1. Simulator against dense matrix products.

fn kron(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn mat_vec(a: &[Vec<Complex64>], v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn dense_ansatz(inst: &ProblemInstance, params: &AnsatzParams) -> Vec<Complex64> {
    let size = 1usize << inst.n;
    let mut v = vec![Complex64::new(1.0 / (size as f64).sqrt(), 0.0); size];
    for l in 0..params.layers() {
        for k in 0..params.objectives() {
            let gamma = params.gamma(l, k);
            let mut phase = vec![vec![Complex64::new(0.0, 0.0); size]; size];
            for (x, row) in phase.iter_mut().enumerate() {
                let f = inst.evaluate_index(x).values[k];
                row[x] = Complex64::from_polar(1.0, -gamma * f);
            }
            v = mat_vec(&phase, &v);
            let beta = params.beta(l, k);
            let (c, s) = (Complex64::new(beta.cos(), 0.0), Complex64::new(0.0, -beta.sin()));
            let single = vec![vec![c, s], vec![s, c]];
            let mut mixer = vec![vec![Complex64::new(1.0, 0.0)]];
            for _ in 0..inst.n {
                mixer = kron(&mixer, &single);
            }
            v = mat_vec(&mixer, &v);
        }
    }
    v
}

fn criterion_simulator() -> Outcome {
    let mut worst = 0.0f64;
    let mut r = rng(1);
    let mut cases = 0;
    for n in 1..=3 {
        for layers in 1..=2 {
            for trial in 0..100u64 {
                let inst = if n == 1 {
                    ProblemInstance::new(
                        ProblemKind::Custom,
                        trial,
                        vec![
                            ObjectiveSpec::Linear { c: vec![r.random::<f64>() - 0.5] },
                            ObjectiveSpec::Linear { c: vec![r.random::<f64>() - 0.5] },
                        ],
                    )
                    .unwrap()
                } else {
                    let kind = ProblemKind::BENCHMARKS[trial as usize % 4];
                    generate(&GeneratorConfig::new(kind, n, trial)).unwrap()
                };
                let theta: Vec<f64> = (0..4 * layers).map(|_| r.random::<f64>() * 6.283_185_307).collect();
                let params = AnsatzParams::new(layers, 2, theta).unwrap();
                let fast = apply_ansatz(&params, &PhaseTable::from_instance(&inst).unwrap()).unwrap();
                let dense = dense_ansatz(&inst, &params);
                for (a, b) in fast.amplitudes().iter().zip(&dense) {
                    worst = worst.max((a - b).norm());
                }
                cases += 1;
            }
        }
    }
    (worst <= 1e-10, format!("{cases} cases, max amplitude error {worst:.2e}"))
}

// 2. Pareto machinery against pairwise definitions.

fn filter_oracle(pts: &[Vec<f64>]) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| {
            !pts.iter()
                .any(|q| q[0] <= pts[i][0] && q[1] <= pts[i][1] && *q != pts[i])
        })
        .collect()
}

fn sort_oracle(pts: &[Vec<f64>]) -> Vec<usize> {
    let mut rank = vec![0usize; pts.len()];
    let mut r = 0;
    while rank.contains(&0) {
        r += 1;
        let open: Vec<usize> = (0..pts.len()).filter(|&i| rank[i] == 0).collect();
        let sub: Vec<Vec<f64>> = open.iter().map(|&i| pts[i].clone()).collect();
        for j in filter_oracle(&sub) {
            rank[open[j]] = r;
        }
    }
    rank
}

fn crowding_oracle(front: &[Vec<f64>]) -> Vec<f64> {
    if front.len() <= 2 {
        return vec![f64::INFINITY; front.len()];
    }
    (0..front.len())
        .map(|i| {
            let mut total = 0.0;
            for k in 0..2 {
                let v = front[i][k];
                let lo = front.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
                let hi = front.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
                if v == lo || v == hi {
                    total = f64::INFINITY;
                    continue;
                }
                let above = front.iter().map(|p| p[k]).filter(|&w| w > v).fold(f64::INFINITY, f64::min);
                let below = front.iter().map(|p| p[k]).filter(|&w| w < v).fold(f64::NEG_INFINITY, f64::max);
                total += (above - below) / (hi - lo);
            }
            total
        })
        .collect()
}

fn criterion_pareto() -> Outcome {
    let mismatches: Vec<String> = (0..200u64)
        .into_par_iter()
        .filter_map(|set| {
            let mut r = rng(100 + set);
            let size = r.random_range(1..=200);
            // Even sets use a coarse grid (many ties), odd sets continuous values.
            let pts: Vec<Vec<f64>> = (0..size)
                .map(|_| {
                    if set % 2 == 0 {
                        vec![r.random_range(0..12) as f64, r.random_range(0..12) as f64]
                    } else {
                        vec![r.random::<f64>(), r.random::<f64>()]
                    }
                })
                .collect();
            if nondominated_filter(&pts).unwrap() != filter_oracle(&pts) {
                return Some(format!("filter on set {set}"));
            }
            let part = nondominated_sort(&pts).unwrap();
            if part.ranks != sort_oracle(&pts) {
                return Some(format!("sort on set {set}"));
            }
            if set % 2 == 1 {
                for front in &part.fronts {
                    let members: Vec<Vec<f64>> = front.iter().map(|&i| pts[i].clone()).collect();
                    if crowding_distance(&members).unwrap() != crowding_oracle(&members) {
                        return Some(format!("crowding on set {set}"));
                    }
                }
            }
            None
        })
        .collect();
    (mismatches.is_empty(), format!("200 sets, mismatches: {mismatches:?}"))
}

// 3. Hypervolume against cell counting and Monte-Carlo.

fn criterion_hypervolume() -> Outcome {
    let mut grid_bad = 0;
    for set in 0..100u64 {
        let mut r = rng(400 + set);
        let size = r.random_range(1..=30);
        let pts: Vec<Vec<f64>> = (0..size)
            .map(|_| vec![r.random_range(0..25) as f64, r.random_range(0..25) as f64])
            .collect();
        let reference = [20.0, 20.0];
        let mut cells = 0usize;
        for x in 0..20 {
            for y in 0..20 {
                let (cx, cy) = (x as f64 + 0.5, y as f64 + 0.5);
                if pts.iter().any(|p| p[0] <= cx && p[1] <= cy) {
                    cells += 1;
                }
            }
        }
        if hypervolume(&pts, &reference).unwrap() != cells as f64 {
            grid_bad += 1;
        }
    }
    let mc: Vec<(f64, f64, f64)> = (0..20u64)
        .into_par_iter()
        .map(|set| {
            let mut r = rng(600 + set);
            let size = r.random_range(1..=15);
            let pts: Vec<Vec<f64>> = (0..size).map(|_| vec![r.random::<f64>(), r.random::<f64>()]).collect();
            let exact = hypervolume(&pts, &[1.0, 1.0]).unwrap();
            const SAMPLES: usize = 1_000_000;
            let hits = (0..SAMPLES)
                .filter(|_| {
                    let (x, y) = (r.random::<f64>(), r.random::<f64>());
                    pts.iter().any(|p| p[0] <= x && p[1] <= y)
                })
                .count();
            let est = hits as f64 / SAMPLES as f64;
            let se = (est * (1.0 - est) / SAMPLES as f64).sqrt();
            (exact, est, se)
        })
        .collect();
    let mc_bad = mc.iter().filter(|(e, m, se)| (e - m).abs() > 3.0 * se.max(1e-12)).count();
    let worst = mc
        .iter()
        .map(|(e, m, se)| (e - m).abs() / se.max(1e-12))
        .fold(0.0, f64::max);
    (
        grid_bad == 0 && mc_bad == 0,
        format!("grid mismatches {grid_bad}/100, Monte-Carlo outside 3 SE {mc_bad}/20 (worst {worst:.2} SE)"),
    )
}

// 4. Line instance.

fn criterion_line() -> Outcome {
    let sizes: Vec<(usize, usize)> = (3..=10)
        .map(|n| (n, brute_force_pareto(&line_instance::<f64>(n).unwrap()).unwrap().front.len()))
        .collect();
    let ok = sizes.iter().all(|&(n, s)| s == 1 << n);
    (ok, format!("front sizes {sizes:?}"))
}

// 5, 6, 9. Run matrices.

fn registry() -> OptimizerRegistry<f64> {
    OptimizerRegistry::with_defaults()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn run_matrix(m: &RunMatrix) -> Vec<RunRow> {
    let summary = cmd_run(m, &registry()).expect("matrix runs");
    assert!(summary.failures.is_empty(), "{:?}", summary.failures);
    read_rows(&m.results_path()).unwrap()
}

fn criterion_qmoom_vs_qmoo(out: &Path) -> Outcome {
    let m = RunMatrix {
        instances: 10,
        seeds: 5,
        pareto_points: Some(12),
        ..RunMatrix::new(
            ProblemKind::BENCHMARKS.to_vec(),
            vec![10],
            vec![AlgoSpec::qmoo(NELDER_MEAD), AlgoSpec::qmoom()],
            out.to_path_buf(),
        )
    };
    let rows = run_matrix(&m);
    let mut by: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for r in &rows {
        by.entry((r.kind.clone(), r.algo.clone())).or_default().push(r.rel_hv);
    }
    let mut wins = 0;
    let mut detail = Vec::new();
    for kind in ProblemKind::BENCHMARKS {
        let q = mean(&by[&(kind.label().to_string(), "qmoo".to_string())]);
        let g = mean(&by[&(kind.label().to_string(), "qmoom".to_string())]);
        if g > q {
            wins += 1;
        }
        detail.push(format!("{kind} qmoo {q:.4} qmoom {g:.4}"));
    }
    (wins >= 3, format!("{} runs, qmoom better on {wins}/4 kinds; {}", rows.len(), detail.join("; ")))
}

fn qmooc_matrix(out: &Path) -> RunMatrix {
    RunMatrix {
        instances: 10,
        seeds: 5,
        pareto_points: Some(10),
        ..RunMatrix::new(
            vec![ProblemKind::Umoco2],
            vec![10],
            vec![
                AlgoSpec::qmooc(NELDER_MEAD, IndicatorId::Ps, 0.1),
                AlgoSpec::qmooc(NELDER_MEAD, IndicatorId::Ps, 0.0),
            ],
            out.to_path_buf(),
        )
    }
}

fn criterion_qmooc_tradeoff(out: &Path) -> Outcome {
    let rows = run_matrix(&qmooc_matrix(out));
    let report = delta_pairs(&rows).unwrap();
    let tenth = report.rows.iter().find(|r| r.p == "0.1").expect("p = 0.1 group");
    let zero = report.rows.iter().find(|r| r.p == "0").expect("p = 0 group");
    // Every p = 0 pair must coincide with its baseline, not merely on average.
    let baseline: BTreeMap<(usize, u64), &RunRow> = rows
        .iter()
        .filter(|r| r.algo == "qmoo")
        .map(|r| ((r.instance_id, r.run_seed), r))
        .collect();
    let zero_exact = rows
        .iter()
        .filter(|r| r.algo == "qmooc" && r.p == "0")
        .all(|r| {
            let b = baseline[&(r.instance_id, r.run_seed)];
            r.hv == b.hv && r.ps == b.ps
        });
    let ok = tenth.delta2 >= 0.10
        && tenth.delta1 >= -0.10
        && zero.delta1 == 0.0
        && zero.delta2 == 0.0
        && zero_exact
        && report.unmatched.is_empty();
    (
        ok,
        format!(
            "p=0.1: {} pairs, mean d1 {:+.4}, mean d2 {:+.4} ({} excluded); p=0: d1 {}, d2 {}, all pairs identical {}",
            tenth.pairs, tenth.delta1, tenth.delta2, tenth.excluded, zero.delta1, zero.delta2, zero_exact
        ),
    )
}

fn criterion_qmoom_invariants() -> Outcome {
    let defaults = GaConfig::<f64>::default();
    let defaults_ok = defaults.population == 5
        && defaults.sbx_eta == 15.0
        && defaults.crossover_prob == 0.9
        && defaults.mutation_eta == 20.0
        && defaults.max_evaluations == 4000
        && defaults.max_generations == 200;
    let runs: Vec<(bool, usize)> = (0..20u64)
        .into_par_iter()
        .map(|i| {
            let kind = ProblemKind::BENCHMARKS[i as usize % 4];
            let inst = generate::<f64>(&GeneratorConfig::new(kind, 10, 900 + i)).unwrap();
            let oracle = brute_force_pareto(&inst).unwrap();
            let mut config = RunConfig::new(Algorithm::Qmoom, i);
            config.pareto_points = Some(12);
            // Half of the runs lift the generation cap so the evaluation cap binds.
            if i % 2 == 1 {
                config.ga.max_generations = 10_000;
            }
            let rec = run_qmoom(&inst, &oracle, &config).unwrap();
            let monotone = rec.trace.windows(2).all(|w| w[1] >= w[0]);
            (monotone && rec.evaluations <= 4000, rec.evaluations)
        })
        .collect();
    let ok = defaults_ok && runs.iter().all(|r| r.0) && runs.iter().any(|r| r.1 == 4000);
    let max_evals = runs.iter().map(|r| r.1).max().unwrap();
    (
        ok,
        format!(
            "defaults ok {defaults_ok}, {}/20 runs monotone within cap, max evaluations {max_evals}",
            runs.iter().filter(|r| r.0).count()
        ),
    )
}

fn brute_force_dominates(a: &[Solution], b: &[Solution], inst: &ProblemInstance) -> bool {
    let ya: Vec<Vec<f64>> = a.iter().map(|x| inst.evaluate(x).unwrap().values).collect();
    let yb: Vec<Vec<f64>> = b.iter().map(|x| inst.evaluate(x).unwrap().values).collect();
    fn search(i: usize, used: &mut [bool], ya: &[Vec<f64>], yb: &[Vec<f64>]) -> bool {
        if i == ya.len() {
            return true;
        }
        for j in 0..yb.len() {
            if !used[j] && ya[i].iter().zip(&yb[j]).all(|(p, q)| p <= q) {
                used[j] = true;
                if search(i + 1, used, ya, yb) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    search(0, &mut vec![false; yb.len()], &ya, &yb)
}

fn criterion_set_dominance() -> Outcome {
    let mut r = rng(8);
    let mut disagree = 0;
    let mut positives = 0;
    for trial in 0..500u64 {
        let kind = ProblemKind::BENCHMARKS[trial as usize % 4];
        let inst = generate::<f64>(&GeneratorConfig::new(kind, 4, trial)).unwrap();
        let p = r.random_range(1..=6);
        let a: Vec<Solution> = (0..p).map(|_| Solution::new(r.random_range(0..16), 4).unwrap()).collect();
        let mut b = a.clone();
        for x in b.iter_mut() {
            if r.random::<f64>() < 0.3 {
                *x = x.flip(r.random_range(0..4));
            }
        }
        b.shuffle(&mut r);
        let fast = set_dominates(&a, &b, &inst).unwrap();
        positives += fast as usize;
        if fast != brute_force_dominates(&a, &b, &inst) {
            disagree += 1;
        }
    }
    (disagree == 0, format!("500 pairs ({positives} dominating), disagreements {disagree}"))
}

fn stripped(mut rows: Vec<RunRow>) -> Vec<String> {
    let mut out: Vec<String> = rows
        .iter_mut()
        .map(|r| {
            r.wall_ms = 0.0;
            format!("{r:?}")
        })
        .collect();
    out.sort();
    out
}

fn criterion_determinism(first: &Path, second: &Path) -> Outcome {
    let a = read_rows(&first.join("results.csv")).unwrap();
    let b = run_matrix(&qmooc_matrix(second));
    let same = stripped(a.clone()) == stripped(b);
    (same, format!("{} rows repeated, identical apart from wall_ms: {same}", a.len()))
}

fn main() {
    let scratch = tempfile::tempdir().unwrap();
    let c5 = scratch.path().join("qmoom_vs_qmoo");
    let c6 = scratch.path().join("qmooc");
    let c9 = scratch.path().join("qmooc_repeat");

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 simulator fidelity", Box::new(criterion_simulator)),
        ("2 pareto machinery", Box::new(criterion_pareto)),
        ("3 hypervolume exactness", Box::new(criterion_hypervolume)),
        ("4 line instance", Box::new(criterion_line)),
        ("5 qmoom vs qmoo", Box::new(|| criterion_qmoom_vs_qmoo(&c5))),
        ("6 qmooc tradeoff", Box::new(|| criterion_qmooc_tradeoff(&c6))),
        ("7 qmoom invariants", Box::new(criterion_qmoom_invariants)),
        ("8 set dominance", Box::new(criterion_set_dominance)),
        ("9 determinism", Box::new(|| criterion_determinism(&c6, &c9))),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        let started = Instant::now();
        let (ok, detail) = check();
        println!(
            "{} criterion {name}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            started.elapsed().as_secs_f64()
        );
        if !ok {
            failed.push(*name);
        }
    }
    if !failed.is_empty() {
        panic!("acceptance criteria failed: {failed:?}");
    }
}
