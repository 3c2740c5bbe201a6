use crate::error::{Error, Result};
use crate::pareto::leq_all;
use crate::problem::{ProblemInstance, Solution};
use crate::scalar::Scalar;

use super::AnsatzDecoder;

/// Whether some bijection `σ` gives `f(x¹ᵢ) ≦ f(x²_σ(i))` for every `i`.
///
/// Decided as perfect-matching existence in the bipartite graph with an edge `i → j` whenever
/// `f(x¹ᵢ) ≦ f(x²ⱼ)`, using augmenting paths.
pub fn set_dominates<T: Scalar>(
    first: &[Solution],
    second: &[Solution],
    instance: &ProblemInstance<T>,
) -> Result<bool> {
    Error::check_len("dominance set size", first.len(), second.len())?;
    let a = images(first, instance)?;
    let b = images(second, instance)?;
    let adjacency: Vec<Vec<usize>> = a
        .iter()
        .map(|ya| (0..b.len()).filter(|&j| leq_all(ya, &b[j])).collect())
        .collect();
    if adjacency.iter().any(Vec::is_empty) {
        return Ok(false);
    }
    let mut matched: Vec<Option<usize>> = vec![None; b.len()];
    for i in 0..a.len() {
        let mut visited = vec![false; b.len()];
        if !augment(i, &adjacency, &mut matched, &mut visited) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn augment(
    i: usize,
    adjacency: &[Vec<usize>],
    matched: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &j in &adjacency[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        if matched[j].is_none_or(|k| augment(k, adjacency, matched, visited)) {
            matched[j] = Some(i);
            return true;
        }
    }
    false
}

fn images<T: Scalar>(xs: &[Solution], instance: &ProblemInstance<T>) -> Result<Vec<Vec<T>>> {
    xs.iter().map(|x| Ok(instance.evaluate(x)?.values)).collect()
}

/// Concatenated images `(f(x₁), …, f(x_P))` in the given (frequency) order.
pub fn vectorize<T: Scalar>(xs: &[Solution], instance: &ProblemInstance<T>) -> Result<Vec<T>> {
    Ok(images(xs, instance)?.concat())
}

/// `F(θ)`: the vectorized candidate set of `θ`.
pub fn parameter_image<T: Scalar>(decoder: &AnsatzDecoder<'_, T>, theta: &[T]) -> Result<Vec<T>> {
    let decoded = decoder.decode(theta)?;
    Ok(decoded.images.into_iter().flat_map(|y| y.values).collect())
}
