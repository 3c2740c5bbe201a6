use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::IndicatorId;

use super::RunRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    BoxData,
    DeltaData,
}

impl ReportMode {
    pub fn file_name(&self) -> &'static str {
        match self {
            ReportMode::BoxData => "boxdata.csv",
            ReportMode::DeltaData => "deltadata.csv",
        }
    }
}

impl FromStr for ReportMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "boxdata" => Ok(ReportMode::BoxData),
            "deltadata" => Ok(ReportMode::DeltaData),
            _ => Err(Error::InvalidConfig(format!("unknown report mode `{s}`"))),
        }
    }
}

pub fn read_rows(path: &Path) -> Result<Vec<RunRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<RunRow>, _>>()
        .map_err(Error::from)
}

/// Quantile of sorted data by linear interpolation between closest ranks.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty data");
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Relative-hypervolume summary of one (kind, n, algo, solver, indicator, p) group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxRow {
    pub kind: String,
    pub n: usize,
    pub algo: String,
    pub solver: String,
    pub indicator: String,
    pub p: String,
    pub count: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
}

type GroupKey = (String, usize, String, String, String, String);

pub fn box_stats(rows: &[RunRow]) -> Vec<BoxRow> {
    let mut groups: BTreeMap<GroupKey, Vec<f64>> = BTreeMap::new();
    for r in rows {
        groups
            .entry((r.kind.clone(), r.n, r.algo.clone(), r.solver.clone(), r.indicator.clone(), r.p.clone()))
            .or_default()
            .push(r.rel_hv);
    }
    groups
        .into_iter()
        .map(|((kind, n, algo, solver, indicator, p), mut v)| {
            v.sort_by(f64::total_cmp);
            BoxRow {
                kind,
                n,
                algo,
                solver,
                indicator,
                p,
                count: v.len(),
                min: v[0],
                q1: quantile(&v, 0.25),
                median: quantile(&v, 0.5),
                mean: v.iter().sum::<f64>() / v.len() as f64,
                q3: quantile(&v, 0.75),
                max: v[v.len() - 1],
            }
        })
        .collect()
}

/// Mean paired changes of one (solver, kind, n, indicator, p) group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaRow {
    pub solver: String,
    pub kind: String,
    pub n: usize,
    pub indicator: String,
    pub p: String,
    pub pairs: usize,
    pub delta1: f64,
    pub delta2: f64,
    /// Pairs left out because a denominator was zero or a value was not finite.
    pub excluded: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DeltaReport {
    pub rows: Vec<DeltaRow>,
    /// QMOOC rows without a same-seed QMOO baseline.
    pub unmatched: Vec<String>,
}

fn indicator_value(row: &RunRow, id: IndicatorId) -> f64 {
    match id {
        IndicatorId::Ps => row.ps,
        IndicatorId::Od => row.od,
        IndicatorId::M => row.m,
        IndicatorId::Dm => row.dm,
        IndicatorId::D => row.d,
        IndicatorId::Ev => row.ev,
    }
}

fn relative(new: f64, base: f64) -> Option<f64> {
    let d = (new - base) / base;
    (base != 0.0 && d.is_finite()).then_some(d)
}

/// Pairs every QMOOC row with the QMOO row of the same solver, instance and seed and averages
/// `δ₁ = (HV' − HV)/HV` and `δ₂ = (I' − I)/I`.
pub fn delta_pairs(rows: &[RunRow]) -> Result<DeltaReport> {
    let baselines: BTreeMap<(&str, &str, usize, usize, u64), &RunRow> = rows
        .iter()
        .filter(|r| r.algo == "qmoo")
        .map(|r| ((r.solver.as_str(), r.kind.as_str(), r.n, r.instance_id, r.run_seed), r))
        .collect();
    let mut groups: BTreeMap<(String, String, usize, String, String), (Vec<f64>, Vec<f64>, usize)> =
        BTreeMap::new();
    let mut unmatched = Vec::new();
    for r in rows.iter().filter(|r| r.algo == "qmooc") {
        let id: IndicatorId = r.indicator.parse()?;
        let key = (r.solver.as_str(), r.kind.as_str(), r.n, r.instance_id, r.run_seed);
        let Some(base) = baselines.get(&key) else {
            unmatched.push(format!(
                "{} {} n={} instance={} seed={} {} p={}",
                r.solver, r.kind, r.n, r.instance_id, r.run_seed, r.indicator, r.p
            ));
            continue;
        };
        let entry = groups
            .entry((r.solver.clone(), r.kind.clone(), r.n, r.indicator.clone(), r.p.clone()))
            .or_default();
        let d1 = relative(r.hv, base.hv);
        let d2 = relative(indicator_value(r, id), indicator_value(base, id));
        match (d1, d2) {
            (Some(a), Some(b)) => {
                entry.0.push(a);
                entry.1.push(b);
            }
            _ => entry.2 += 1,
        }
    }
    let mean = |v: &[f64]| {
        if v.is_empty() {
            f64::NAN
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let rows = groups
        .into_iter()
        .map(|((solver, kind, n, indicator, p), (d1, d2, excluded))| DeltaRow {
            solver,
            kind,
            n,
            indicator,
            p,
            pairs: d1.len(),
            delta1: mean(&d1),
            delta2: mean(&d2),
            excluded,
        })
        .collect();
    Ok(DeltaReport { rows, unmatched })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportSummary {
    pub path: PathBuf,
    pub rows: usize,
    pub unmatched: Vec<String>,
}

/// Aggregates `results` and writes `boxdata.csv` or `deltadata.csv` into `out_dir`.
pub fn cmd_report(results: &Path, mode: ReportMode, out_dir: &Path) -> Result<ReportSummary> {
    let rows = read_rows(results)?;
    if rows.is_empty() {
        return Err(Error::InvalidConfig(format!("{} holds no runs", results.display())));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let path = out_dir.join(mode.file_name());
    let mut w = csv::Writer::from_path(&path)?;
    let (count, unmatched) = match mode {
        ReportMode::BoxData => {
            let stats = box_stats(&rows);
            for s in &stats {
                w.serialize(s)?;
            }
            (stats.len(), Vec::new())
        }
        ReportMode::DeltaData => {
            let report = delta_pairs(&rows)?;
            for d in &report.rows {
                w.serialize(d)?;
            }
            (report.rows.len(), report.unmatched)
        }
    };
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(ReportSummary {
        path,
        rows: count,
        unmatched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(algo: &str, indicator: &str, p: &str, seed: u64, hv: f64, ps: f64, rel: f64) -> RunRow {
        RunRow {
            algo: algo.into(),
            solver: "nelder-mead".into(),
            indicator: indicator.into(),
            p: p.into(),
            kind: "UMOCO-2".into(),
            n: 10,
            instance_id: 0,
            run_seed: seed,
            hv,
            oracle_hv: 1.0,
            rel_hv: rel,
            ps,
            od: 1.0,
            m: 1.0,
            dm: 1.0,
            d: 1.0,
            ev: 1.0,
            evals: 10,
            wall_ms: 0.0,
            termination: "budget".into(),
        }
    }

    #[test]
    fn single_row_quantiles() {
        let stats = box_stats(&[row("qmoo", "", "", 0, 0.4, 1.0, 0.4)]);
        let s = &stats[0];
        assert_eq!([s.min, s.q1, s.median, s.mean, s.q3, s.max], [0.4; 6]);
    }

    #[test]
    fn hand_computed_quantiles() {
        // Sorted 0.1, 0.2, 0.4, 0.8, 1.0: q1 at rank 1 → 0.2, q3 at rank 3 → 0.8.
        let rows: Vec<RunRow> = [0.8, 0.1, 1.0, 0.4, 0.2]
            .iter()
            .enumerate()
            .map(|(i, &v)| row("qmoom", "", "", i as u64, v, 1.0, v))
            .collect();
        let s = &box_stats(&rows)[0];
        assert_eq!((s.min, s.q1, s.median, s.q3, s.max), (0.1, 0.2, 0.4, 0.8, 1.0));
        assert!((s.mean - 0.5).abs() < 1e-12);
        // Four values: q1 sits a quarter of the way from the 1st to the 2nd.
        assert!((quantile(&[1.0, 2.0, 3.0, 4.0], 0.25) - 1.75).abs() < 1e-12);
        assert!((quantile(&[1.0, 2.0, 3.0, 4.0], 0.5) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn paired_deltas() {
        let rows = vec![
            row("qmoo", "", "", 0, 2.0, 4.0, 0.5),
            row("qmooc", "ps", "0.1", 0, 1.5, 6.0, 0.4),
            row("qmoo", "", "", 1, 2.0, 2.0, 0.5),
            row("qmooc", "ps", "0.1", 1, 2.0, 3.0, 0.5),
            row("qmooc", "ps", "0", 1, 2.0, 2.0, 0.5),
            row("qmooc", "ps", "0.1", 7, 2.0, 3.0, 0.5),
        ];
        let rep = delta_pairs(&rows).unwrap();
        assert_eq!(rep.unmatched.len(), 1);
        let zero = rep.rows.iter().find(|r| r.p == "0").unwrap();
        assert_eq!((zero.delta1, zero.delta2), (0.0, 0.0));
        let tenth = rep.rows.iter().find(|r| r.p == "0.1").unwrap();
        assert_eq!(tenth.pairs, 2);
        assert!((tenth.delta1 - (-0.125)).abs() < 1e-12);
        assert!((tenth.delta2 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_denominator_is_excluded() {
        let rows = vec![row("qmoo", "", "", 0, 0.0, 0.0, 0.0), row("qmooc", "ps", "0.5", 0, 1.0, 1.0, 0.2)];
        let rep = delta_pairs(&rows).unwrap();
        assert_eq!((rep.rows[0].pairs, rep.rows[0].excluded), (0, 1));
    }
}
