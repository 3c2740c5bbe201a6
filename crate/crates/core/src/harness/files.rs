use std::fs;
use std::path::{Path, PathBuf};

use crate::bench::{brute_force_pareto, generate, GeneratorConfig, ParetoOracle};
use crate::error::{Error, Result};
use crate::problem::{ProblemInstance, ProblemKind};

/// `{kind}_{n}_{index}.json`, with the kind in lowercase.
pub fn instance_file_name(kind: ProblemKind, n: usize, index: usize) -> String {
    format!("{}_{n}_{index}.json", kind.slug())
}

/// Writes `count` generated instances, the `i`-th seeded with `base_seed + i`.
pub fn cmd_gen(
    kind: ProblemKind,
    n: usize,
    count: usize,
    base_seed: u64,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    if count > 0 {
        fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    }
    (0..count)
        .map(|i| {
            let config = GeneratorConfig::new(kind, n, base_seed + i as u64);
            let instance = generate::<f64>(&config)?;
            let path = out_dir.join(instance_file_name(kind, n, i));
            write_text(&path, &instance.to_json()?)?;
            Ok(path)
        })
        .collect()
}

pub fn load_instance(path: &Path) -> Result<ProblemInstance<f64>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    ProblemInstance::from_json(&text)
}

/// `{stem}.oracle.json` next to the instance file.
pub fn oracle_path(instance_path: &Path) -> PathBuf {
    let stem = instance_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    instance_path.with_file_name(format!("{stem}.oracle.json"))
}

/// Enumerates the instance and writes its oracle file.
pub fn cmd_oracle(instance_path: &Path) -> Result<PathBuf> {
    let instance = load_instance(instance_path)?;
    let oracle = brute_force_pareto(&instance)?;
    let path = oracle_path(instance_path);
    write_text(&path, &serde_json::to_string_pretty(&oracle)?)?;
    Ok(path)
}

/// Reads the oracle file of `instance_path`, building and saving it first when absent.
pub fn load_or_build_oracle(
    instance_path: &Path,
    instance: &ProblemInstance<f64>,
) -> Result<ParetoOracle<f64>> {
    let path = oracle_path(instance_path);
    if path.exists() {
        let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        return Ok(serde_json::from_str(&text)?);
    }
    let oracle = brute_force_pareto(instance)?;
    write_text(&path, &serde_json::to_string_pretty(&oracle)?)?;
    Ok(oracle)
}

/// Writes through a temporary sibling and renames, so readers never see half a file.
pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}
