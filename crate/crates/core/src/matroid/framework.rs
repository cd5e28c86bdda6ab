//! Ranked linkages in frameworks via guessed column vectors.

use super::{lossy_truncate, rank_of, LinearMatroid, RationalMatrixMatroid, TransversalInstance};
use super::{rational_to_prime_field, transversal_to_linear};
use crate::error::{Error, Result};
use crate::graph::{validate_solution_with, ColoredWeightedGraph, LinkageQuery, LinkageSolution};
use crate::rng::{seeded, stream_id, Rng};
use crate::solver::{solve, SolverConfig};

/// A matroid on the vertex set in one of the supported representations.
#[derive(Clone, Debug)]
pub enum MatroidSource {
    Linear(LinearMatroid),
    Transversal(TransversalInstance),
    Rational(RationalMatrixMatroid),
}

impl MatroidSource {
    pub fn ground_size(&self) -> usize {
        match self {
            MatroidSource::Linear(m) => m.cols(),
            MatroidSource::Transversal(t) => t.left,
            MatroidSource::Rational(m) => m.cols(),
        }
    }

    pub fn is_independent(&self, xs: &[usize]) -> bool {
        match self {
            MatroidSource::Linear(m) => m.is_independent(xs),
            MatroidSource::Transversal(t) => t.is_independent(xs),
            MatroidSource::Rational(m) => m.is_independent(xs),
        }
    }

    /// A `k`-row representation in which dependent sets stay dependent and
    /// an independent `k`-set stays independent with probability at least
    /// `1/2` (certainly when the source already has `k` rows).
    pub fn draw(&self, k: usize, rng: &mut Rng) -> Result<LinearMatroid> {
        let linear = match self {
            MatroidSource::Linear(m) if m.rows() == k => return Ok(m.clone()),
            MatroidSource::Linear(m) => m.clone(),
            MatroidSource::Transversal(t) => transversal_to_linear(t, k, rng)?,
            MatroidSource::Rational(m) => rational_to_prime_field(m, k, rng)?,
        };
        lossy_truncate(&linear, k, rng)
    }

    fn is_exact(&self, k: usize) -> bool {
        matches!(self, MatroidSource::Linear(m) if m.rows() == k)
    }
}

#[derive(Clone, Debug)]
pub struct FrameworkConfig {
    pub solver: SolverConfig,
    /// Independent (representation, solve) rounds; the best validated
    /// answer is kept.
    pub rounds: usize,
}

impl Default for FrameworkConfig {
    fn default() -> Self {
        FrameworkConfig {
            solver: SolverConfig::default(),
            rounds: 20,
        }
    }
}

const TAG_ROUND: u64 = 11;

/// Minimum-length `(k, w)`-ranked linkage: repeats drawing a `k`-row
/// representation and solving it with [`framework_solve`].
pub fn framework_pipeline(
    graph: &ColoredWeightedGraph,
    source: &MatroidSource,
    query: &LinkageQuery,
    cfg: &FrameworkConfig,
) -> Result<Option<LinkageSolution>> {
    if source.ground_size() != graph.n() {
        return Err(Error::invalid(format!(
            "matroid has {} elements, graph has {} vertices",
            source.ground_size(),
            graph.n()
        )));
    }
    let rounds = if source.is_exact(query.k) { 1 } else { cfg.rounds.max(1) };
    let mut best: Option<LinkageSolution> = None;
    for round in 0..rounds as u64 {
        let mut rng = seeded(cfg.solver.seed, stream_id(&[TAG_ROUND, round]));
        let m = source.draw(query.k, &mut rng)?;
        let mut solver = cfg.solver.clone();
        solver.seed = cfg.solver.seed ^ stream_id(&[TAG_ROUND, round, 1]);
        let Some(sol) = framework_solve(graph, &m, query, &solver)? else {
            continue;
        };
        validate_solution_with(graph, query, &sol, |xs| source.is_independent(xs))
            .map_err(Error::Validation)?;
        if best.as_ref().is_none_or(|b| sol.total_length < b.total_length) {
            best = Some(sol);
        }
    }
    Ok(best)
}

/// Minimum-length `(k, w)`-ranked linkage for a matroid given by exactly
/// `k` rows: one colored solve per independent `k`-set of distinct column
/// vectors.
pub fn framework_solve(
    graph: &ColoredWeightedGraph,
    m: &LinearMatroid,
    query: &LinkageQuery,
    cfg: &SolverConfig,
) -> Result<Option<LinkageSolution>> {
    query.check(graph.n())?;
    let n = graph.n();
    let k = query.k;
    if m.cols() != n {
        return Err(Error::invalid(format!("matroid has {} columns, graph has {n} vertices", m.cols())));
    }
    if m.rows() != k {
        return Err(Error::Contract(format!(
            "framework_solve needs exactly k = {k} rows, got {}; truncate first",
            m.rows()
        )));
    }
    let columns: Vec<Vec<u64>> = (0..n).map(|j| m.column(j)).collect();
    let mut distinct: Vec<Vec<u64>> = columns.iter().filter(|c| c.iter().any(|&x| x != 0)).cloned().collect();
    distinct.sort();
    distinct.dedup();

    // New sources, one per original source, adjacent to all of S.
    let padded_n = n + query.sources.len();
    let mut edges = graph.edges().to_vec();
    for i in 0..query.sources.len() {
        edges.extend(query.sources.iter().map(|&s| (s, n + i)));
    }
    let padded_sources: Vec<usize> = (n..padded_n).collect();
    let colored_query = LinkageQuery::new(padded_sources, query.sinks.clone(), query.p, k + 1, query.w + 1);

    let mut best: Option<LinkageSolution> = None;
    for guess in subsets(distinct.len(), k) {
        let vectors: Vec<Vec<u64>> = guess.iter().map(|&i| distinct[i].clone()).collect();
        if rank_of(&m.spec, vectors.clone()) < k {
            continue;
        }
        let mut colors = vec![k as u32 + 1; padded_n];
        let mut weights = vec![1u64; padded_n];
        for v in 0..n {
            if let Some(i) = vectors.iter().position(|c| *c == columns[v]) {
                colors[v] = i as u32 + 1;
                weights[v] = graph.weight(v);
            }
        }
        let colored = ColoredWeightedGraph::new(padded_n, edges.iter().copied(), colors, weights)?;
        let Some(sol) = solve(&colored, &colored_query, cfg)? else {
            continue;
        };
        if best.as_ref().is_some_and(|b| b.total_length <= sol.total_length - query.p) {
            continue;
        }
        let paths: Vec<Vec<usize>> = sol.paths.iter().map(|p| p[1..].to_vec()).collect();
        let certificate: Vec<usize> = sol
            .certificate
            .iter()
            .copied()
            .filter(|&v| colored.color(v) as usize <= k)
            .collect();
        best = Some(LinkageSolution::new(paths, certificate));
    }
    Ok(best)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}
