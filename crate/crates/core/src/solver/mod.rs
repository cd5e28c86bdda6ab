//! The randomized pipeline: normalize, find the minimum length by repeated
//! evaluation, recover a linkage by self-reduction, extract a certificate.

mod certificate;
mod search;

use rayon::prelude::*;

pub use certificate::extract_certificate;

use crate::error::{Error, Result};
use crate::field::{build_core_field, BinaryField};
use crate::flow::disjoint_paths_undirected;
use crate::graph::{
    normalize, validate_solution, ColoredWeightedGraph, LinkageQuery, LinkageSolution,
    NormalizedQuery,
};
use crate::rng::{seeded, stream_id};
use crate::walk_dp::{evaluate_upto, EvalOptions, Evaluator, VariableAssignment, WalkProblem};
use search::{search_linkage, Search};

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Independent evaluations before a length is declared empty.
    pub trials_per_length: usize,
    /// Evaluations before a tentative deletion is rejected; `None` means
    /// `trials_per_length + ceil(log2 |E|)`.
    pub recovery_trials: Option<usize>,
    /// Evaluations before a tentative vertex deletion is rejected. A wrong
    /// rejection only leaves a larger graph for the exact search.
    pub vertex_trials: usize,
    pub seed: u64,
    pub max_w: u64,
    pub evaluator: Evaluator,
    pub memory_budget: usize,
    /// Whole-recovery retries before giving up.
    pub recovery_attempts: usize,
    /// Step budget of the exhaustive search on the reduced graph.
    pub search_budget: usize,
    /// Evaluations run concurrently.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            trials_per_length: 20,
            recovery_trials: None,
            vertex_trials: 3,
            seed: 0,
            max_w: 1_000_000,
            evaluator: Evaluator::Auto,
            memory_budget: 256 << 20,
            recovery_attempts: 4,
            search_budget: 2_000_000,
            threads: 1,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig {
            seed,
            ..Default::default()
        }
    }

    fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            evaluator: self.evaluator,
            max_w: self.max_w,
            memory_budget: self.memory_budget,
        }
    }
}

/// A solution (or `None` for infeasible) with bookkeeping.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Option<LinkageSolution>,
    /// Polynomial evaluations performed.
    pub evaluations: usize,
}

/// Minimum-length `(k, w)`-colored `(S, T)`-linkage of order `p`, or `None`
/// when none exists (up to the one-sided error of the test).
pub fn solve(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    cfg: &SolverConfig,
) -> Result<Option<LinkageSolution>> {
    Ok(solve_report(graph, query, cfg)?.solution)
}

pub fn solve_report(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    cfg: &SolverConfig,
) -> Result<SolveReport> {
    query.check(graph.n())?;
    if cfg.trials_per_length == 0 {
        return Err(Error::Contract("trials_per_length must be >= 1".into()));
    }
    let none = |evaluations| SolveReport {
        solution: None,
        evaluations,
    };
    if query.k == 0 {
        if query.w != 0 {
            return Ok(none(0));
        }
        let blocked = vec![false; graph.n()];
        let paths = disjoint_paths_undirected(
            graph,
            &query.sources,
            &query.sinks,
            query.p,
            &blocked,
            true,
        );
        return Ok(SolveReport {
            solution: paths.map(|p| LinkageSolution::new(p, Vec::new())),
            evaluations: 0,
        });
    }
    let labelable_max = graph
        .weights()
        .iter()
        .copied()
        .filter(|&x| x <= query.w)
        .max()
        .unwrap_or(0);
    if query.w > query.k as u64 * labelable_max {
        return Ok(none(0));
    }
    let nq = match NormalizedQuery::identity(graph, query) {
        Some(nq) => nq,
        None => normalize(graph, query)?,
    };
    let mut engine = Engine::new(&nq, cfg)?;
    let Some(ell) = engine.min_length()? else {
        return Ok(none(engine.evaluations));
    };
    let lifted = engine.recover(ell)?;
    let solution = nq.back_map(&lifted);
    validate_solution(graph, query, &solution).map_err(Error::Validation)?;
    Ok(SolveReport {
        solution: Some(solution),
        evaluations: engine.evaluations,
    })
}

/// Smallest normalized length `l` with a nonzero evaluation, or `None`.
pub fn min_length(nq: &NormalizedQuery, cfg: &SolverConfig) -> Result<Option<usize>> {
    Engine::new(nq, cfg)?.min_length()
}

/// A validated solution of the normalized instance of length at most `ell`.
pub fn recover(nq: &NormalizedQuery, ell: usize, cfg: &SolverConfig) -> Result<LinkageSolution> {
    Engine::new(nq, cfg)?.recover(ell)
}

struct Engine<'a> {
    nq: &'a NormalizedQuery,
    cfg: &'a SolverConfig,
    field: BinaryField,
    opts: EvalOptions,
    pool: Option<rayon::ThreadPool>,
    evaluations: usize,
    /// Stream counter; every evaluation gets its own assignment stream.
    draws: u64,
}

const TAG_LENGTH: u64 = 1;
const TAG_RECOVERY: u64 = 2;

impl<'a> Engine<'a> {
    fn new(nq: &'a NormalizedQuery, cfg: &'a SolverConfig) -> Result<Self> {
        let pool = if cfg.threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(cfg.threads)
                    .build()
                    .map_err(|e| Error::Contract(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Engine {
            nq,
            cfg,
            field: build_core_field(nq.graph.n())?,
            opts: cfg.eval_options(),
            pool,
            evaluations: 0,
            draws: 0,
        })
    }

    fn batch(&self) -> usize {
        self.cfg.threads.max(1)
    }

    /// `count` evaluations of `f(F_l)` for all `l <= max_len` on `graph`, at
    /// fresh points, in draw order.
    fn evaluate(
        &mut self,
        graph: &ColoredWeightedGraph,
        max_len: usize,
        tag: u64,
        count: usize,
    ) -> Result<Vec<Vec<u32>>> {
        let q = &self.nq.query;
        let problem = WalkProblem {
            graph,
            sources: &q.sources,
            sinks: &q.sinks,
            k: q.k,
            w: q.w,
        };
        let streams: Vec<u64> = (0..count as u64)
            .map(|i| stream_id(&[tag, self.draws + i]))
            .collect();
        self.draws += count as u64;
        self.evaluations += count;
        let field = &self.field;
        let opts = &self.opts;
        let seed = self.cfg.seed;
        let one = |stream: &u64| {
            let mut rng = seeded(seed, *stream);
            let assign = VariableAssignment::random(graph, q.k, field, &mut rng);
            evaluate_upto(field, &problem, max_len, &assign, opts)
        };
        match &self.pool {
            Some(pool) => pool.install(|| streams.par_iter().map(one).collect()),
            None => streams.iter().map(one).collect(),
        }
    }

    /// Lower bound on any solution length: the shortest order-`p` linkage,
    /// and room for the `k'` certificate vertices next to `2p - 1` twins
    /// (or next to nothing when there are no twins).
    fn length_floor(&self) -> Option<usize> {
        let g = &self.nq.graph;
        let q = &self.nq.query;
        let blocked = vec![false; g.n()];
        let paths = disjoint_paths_undirected(g, &q.sources, &q.sinks, q.p, &blocked, true)?;
        let shortest: usize = paths.iter().map(Vec::len).sum();
        let room = if self.nq.has_twins() { q.k + 2 * q.p - 1 } else { q.k.max(2 * q.p) };
        Some(shortest.max(room))
    }

    fn min_length(&mut self) -> Result<Option<usize>> {
        let n = self.nq.graph.n();
        let r = self.cfg.trials_per_length;
        let Some(lo) = self.length_floor() else {
            return Ok(None);
        };
        if lo > n {
            return Ok(None);
        }
        let graph = &self.nq.graph;
        let mut zeros = vec![0usize; n + 1];
        let mut best: Option<usize> = None;
        let mut hi = lo;
        let mut step = 1;
        while best.is_none() {
            let results = self.evaluate(graph, hi, TAG_LENGTH, self.batch())?;
            for vals in results {
                for l in lo..=hi {
                    if vals[l] != 0 {
                        best = Some(best.map_or(l, |b| b.min(l)));
                    } else {
                        zeros[l] += 1;
                    }
                }
            }
            if best.is_none() && zeros[hi] >= r {
                if hi == n {
                    return Ok(None);
                }
                hi = (hi + step).min(n);
                step *= 2;
            }
        }
        loop {
            let b = best.unwrap();
            if (lo..b).all(|l| zeros[l] >= r) {
                return Ok(best);
            }
            let results = self.evaluate(graph, b - 1, TAG_LENGTH, self.batch())?;
            for vals in results {
                for l in lo..b {
                    if vals[l] != 0 {
                        best = Some(best.unwrap().min(l));
                    } else {
                        zeros[l] += 1;
                    }
                }
            }
        }
    }

    fn recovery_trials(&self) -> usize {
        self.cfg.recovery_trials.unwrap_or_else(|| {
            let e = self.nq.graph.edges().len().max(1);
            let log = usize::BITS - (e - 1).leading_zeros();
            self.cfg.trials_per_length + log as usize
        })
    }

    /// Smallest length `<= ell` found nonzero on `graph` within the trial
    /// budget.
    fn survives(
        &mut self,
        graph: &ColoredWeightedGraph,
        ell: usize,
        rt: usize,
    ) -> Result<Option<usize>> {
        let lo = self.nq.query.p;
        let mut done = 0;
        while done < rt {
            let count = self.batch().min(rt - done);
            let results = self.evaluate(graph, ell, TAG_RECOVERY, count)?;
            done += count;
            for vals in results {
                if let Some(l) = (lo..=ell).find(|&l| vals[l] != 0) {
                    return Ok(Some(l));
                }
            }
        }
        Ok(None)
    }

    fn recover(&mut self, ell: usize) -> Result<LinkageSolution> {
        for _ in 0..self.cfg.recovery_attempts.max(1) {
            if let Some(sol) = self.recover_once(ell)? {
                return Ok(sol);
            }
        }
        Err(Error::RecoveryExhausted {
            attempts: self.cfg.recovery_attempts.max(1),
        })
    }

    fn recover_once(&mut self, mut ell: usize) -> Result<Option<LinkageSolution>> {
        let nq = self.nq;
        let base = &nq.graph;
        let n = base.n();
        let q = &nq.query;
        let mut removed = vec![false; n];
        let keep: Vec<bool> = (0..n).map(|v| nq.is_twin(v) || nq.is_terminal(v)).collect();
        // Vertices too far from both terminal sets for any linkage of length ell.
        let ds = base.bfs_distances(&q.sources);
        let dt = base.bfs_distances(&q.sinks);
        let others = if nq.has_twins() { 3 * (q.p - 1) } else { 2 * (q.p - 1) };
        for v in (0..n).filter(|&v| !keep[v]) {
            removed[v] = match (ds[v], dt[v]) {
                (Some(a), Some(b)) => a + b + 1 + others > ell,
                _ => true,
            };
        }
        let mut graph = base.without_vertices(&removed);
        strip_leaves(&mut graph, &mut removed, &keep);

        for v in 0..n {
            if removed[v] || keep[v] {
                continue;
            }
            let mut trial = removed.clone();
            trial[v] = true;
            let mut candidate = graph.without_vertices(&trial);
            strip_leaves(&mut candidate, &mut trial, &keep);
            if let Some(l) = self.survives(&candidate, ell, self.cfg.vertex_trials.max(1))? {
                ell = ell.min(l);
                removed = trial;
                graph = candidate;
            }
        }

        let certify = |paths: &[Vec<usize>]| {
            let vs: Vec<usize> = paths.iter().flatten().copied().collect();
            extract_certificate(base, &vs, q.k, q.w)
        };
        let found = match search_linkage(
            &graph,
            &q.sources,
            &q.sinks,
            ell,
            &certify,
            self.cfg.search_budget,
        ) {
            Search::Found(paths, x) => Some((paths, x)),
            Search::NotFound => None,
            Search::OutOfBudget => {
                let graph = self.edge_pass(graph, ell)?;
                match search_linkage(
                    &graph,
                    &q.sources,
                    &q.sinks,
                    ell,
                    &certify,
                    self.cfg.search_budget,
                ) {
                    Search::Found(paths, x) => Some((paths, x)),
                    _ => None,
                }
            }
        };
        let Some((mut paths, x)) = found else {
            return Ok(None);
        };
        paths.sort_by_key(|p| p[0]);
        let sol = LinkageSolution::new(paths, x);
        Ok(validate_solution(base, q, &sol).is_ok().then_some(sol))
    }

    /// Tentatively deletes every edge in lexicographic order, keeping each
    /// deletion that leaves a nonzero evaluation.
    fn edge_pass(&mut self, mut graph: ColoredWeightedGraph, ell: usize) -> Result<ColoredWeightedGraph> {
        let edges = graph.edges().to_vec();
        for e in edges {
            let Some(i) = graph.edge_index(e.0, e.1) else {
                continue;
            };
            let mut flags = vec![false; graph.edges().len()];
            flags[i] = true;
            let candidate = graph.without_edges(&flags);
            let rt = self.recovery_trials();
            if self.survives(&candidate, ell, rt)?.is_some() {
                graph = candidate;
            }
        }
        Ok(graph)
    }
}

/// Removes vertices of degree at most one until none is left, except the
/// endpoints in `keep`: the others cannot be interior to a path.
fn strip_leaves(graph: &mut ColoredWeightedGraph, removed: &mut [bool], keep: &[bool]) {
    loop {
        let leaves: Vec<usize> = (0..keep.len())
            .filter(|&v| !removed[v] && !keep[v] && graph.degree(v) <= 1)
            .collect();
        if leaves.is_empty() {
            return;
        }
        for v in leaves {
            removed[v] = true;
        }
        *graph = graph.without_vertices(removed);
    }
}
