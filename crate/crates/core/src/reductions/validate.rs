use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::ColoredWeightedGraph;

fn bad(msg: String) -> Error {
    Error::Contract(msg)
}

fn simple_walk(graph: &ColoredWeightedGraph, vs: &[usize], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for &v in vs {
        if v >= graph.n() {
            return Err(bad(format!("{what}: vertex {v} out of range")));
        }
        if !seen.insert(v) {
            return Err(bad(format!("{what}: vertex {v} repeats")));
        }
    }
    if let Some(w) = vs.windows(2).find(|w| !graph.has_edge(w[0], w[1])) {
        return Err(bad(format!("{what}: {}-{} is not an edge", w[0], w[1])));
    }
    Ok(())
}

/// A simple path from `s` to `t`.
pub fn validate_path(graph: &ColoredWeightedGraph, path: &[usize], s: usize, t: usize) -> Result<()> {
    simple_walk(graph, path, "path")?;
    if path.first() != Some(&s) || path.last() != Some(&t) {
        return Err(bad(format!("path {path:?} does not run from {s} to {t}")));
    }
    Ok(())
}

/// A simple cycle with at least three vertices.
pub fn validate_cycle(graph: &ColoredWeightedGraph, cycle: &[usize]) -> Result<()> {
    if cycle.len() < 3 {
        return Err(bad(format!("cycle {cycle:?} has fewer than three vertices")));
    }
    simple_walk(graph, cycle, "cycle")?;
    let (a, b) = (cycle[0], cycle[cycle.len() - 1]);
    if !graph.has_edge(a, b) {
        return Err(bad(format!("cycle: closing pair {b}-{a} is not an edge")));
    }
    Ok(())
}

/// Petals are cycles of at least three vertices through the depot that share
/// nothing else.
pub fn validate_flower(graph: &ColoredWeightedGraph, flower: &super::Flower) -> Result<()> {
    let mut seen = HashSet::new();
    for petal in &flower.petals {
        let mut cycle = vec![flower.depot];
        cycle.extend_from_slice(petal);
        validate_cycle(graph, &cycle)?;
        for &v in petal {
            if !seen.insert(v) {
                return Err(bad(format!("flower: vertex {v} on two petals")));
            }
        }
    }
    Ok(())
}
