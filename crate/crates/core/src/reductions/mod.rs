//! Applications as colored linkage queries: each operation builds a
//! constructed instance, solves it and maps the linkage back.

mod validate;

use crate::error::{Error, Result};
use crate::graph::{ColoredWeightedGraph, LinkageQuery, LinkageSolution};
use crate::solver::{solve, SolverConfig};

pub use validate::{validate_cycle, validate_flower, validate_path};

/// How an answer was obtained: the construction and the constant by which
/// the application length is smaller than the linkage length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub construction: String,
    pub offset: usize,
    pub linkage: LinkageSolution,
}

/// An application answer with its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced<T> {
    pub answer: T,
    pub length: usize,
    pub trace: ReductionTrace,
}

/// A cycle as its vertices in order; its length is the vertex count.
pub type Cycle = Vec<usize>;

/// Cycles meeting only at `depot`; each petal lists its non-depot vertices in
/// order. The length of a flower is its edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flower {
    pub depot: usize,
    pub petals: Vec<Vec<usize>>,
}

impl Flower {
    pub fn length(&self) -> usize {
        self.petals.iter().map(|p| p.len() + 1).sum()
    }
}

fn trace(construction: impl Into<String>, offset: usize, linkage: LinkageSolution) -> ReductionTrace {
    ReductionTrace {
        construction: construction.into(),
        offset,
        linkage,
    }
}

fn check_vertex(graph: &ColoredWeightedGraph, v: usize, what: &str) -> Result<()> {
    if v >= graph.n() {
        return Err(Error::invalid(format!("{what}: vertex {v} out of range 0..{}", graph.n())));
    }
    Ok(())
}

fn sorted_set(graph: &ColoredWeightedGraph, vs: &[usize], what: &str) -> Result<Vec<usize>> {
    for &v in vs {
        check_vertex(graph, v, what)?;
    }
    let mut out = vs.to_vec();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `graph` plus one new vertex per entry of `twins`, adjacent to the given
/// neighbors.
fn with_new_vertices(graph: &ColoredWeightedGraph, twins: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges = graph.edges().to_vec();
    for (i, nbrs) in twins.iter().enumerate() {
        edges.extend(nbrs.iter().map(|&u| (u, graph.n() + i)));
    }
    edges
}

/// Shortest `(s, t)`-path with at least `k` vertices.
pub fn longest_st_path(
    graph: &ColoredWeightedGraph,
    s: usize,
    t: usize,
    k: usize,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Vec<usize>>>> {
    check_vertex(graph, s, "s")?;
    check_vertex(graph, t, "t")?;
    if s == t {
        return Err(Error::invalid("longest path: s and t must differ"));
    }
    let g = ColoredWeightedGraph::bijective(graph.n(), graph.edges().iter().copied())?;
    let q = LinkageQuery::new(vec![s], vec![t], 1, k, k as u64);
    let Some(sol) = solve(&g, &q, cfg)? else {
        return Ok(None);
    };
    let path = sol.paths[0].clone();
    validate_path(graph, &path, s, t)?;
    Ok(Some(Reduced {
        length: path.len(),
        answer: path,
        trace: trace("bijective coloring, unit weights, (k, k)", 0, sol),
    }))
}

/// Shortest cycle with at least `max(k, 3)` vertices.
pub fn longest_cycle(graph: &ColoredWeightedGraph, k: usize, cfg: &SolverConfig) -> Result<Option<Reduced<Cycle>>> {
    let k = k.max(3);
    let mut best: Option<Reduced<Cycle>> = None;
    for (i, &(s, t)) in graph.edges().iter().enumerate() {
        let mut drop = vec![false; graph.edges().len()];
        drop[i] = true;
        let without = graph.without_edges(&drop);
        let Some(r) = longest_st_path(&without, s, t, k, cfg)? else {
            continue;
        };
        if best.as_ref().is_some_and(|b| b.length <= r.length) {
            continue;
        }
        validate_cycle(graph, &r.answer)?;
        best = Some(Reduced {
            length: r.length,
            answer: r.answer,
            trace: trace(format!("edge {s}-{t} removed, then longest path"), 0, r.trace.linkage),
        });
    }
    Ok(best)
}

/// Maps a twin-to-terminal path back to the cycle it closes.
fn close_cycle(sol: &LinkageSolution) -> Cycle {
    sol.paths[0][1..].to_vec()
}

/// Shortest cycle (at least three vertices) through every vertex of `terminals`.
pub fn t_cycle(
    graph: &ColoredWeightedGraph,
    terminals: &[usize],
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Cycle>>> {
    let ts = sorted_set(graph, terminals, "T")?;
    if ts.is_empty() {
        return Err(Error::invalid("T-cycle: T must be nonempty"));
    }
    if ts.len() < 3 {
        // A one- or two-terminal walk may close on a single edge; the
        // weighted construction forces a third vertex.
        return weighted_t_cycle(graph, &ts, 3, cfg);
    }
    let n = graph.n();
    let t = ts[0];
    let mut colors = vec![1u32; n + 1];
    for (i, &u) in ts[1..].iter().enumerate() {
        colors[u] = i as u32 + 2;
    }
    let edges = with_new_vertices(graph, &[graph.neighbors(t).to_vec()]);
    let g = ColoredWeightedGraph::new(n + 1, edges, colors, vec![1; n + 1])?;
    let kk = ts.len();
    let q = LinkageQuery::new(vec![n], vec![t], 1, kk, kk as u64);
    let Some(sol) = solve(&g, &q, cfg)? else {
        return Ok(None);
    };
    let cycle = close_cycle(&sol);
    validate_cycle(graph, &cycle)?;
    require_cover(&cycle, &ts)?;
    Ok(Some(Reduced {
        length: cycle.len(),
        answer: cycle,
        trace: trace(format!("twin of {t}; terminals colored 2..{kk}"), 1, sol),
    }))
}

/// Shortest cycle through every vertex of `terminals` with at least
/// `max(k, 3)` vertices.
pub fn longest_t_cycle(
    graph: &ColoredWeightedGraph,
    terminals: &[usize],
    k: usize,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Cycle>>> {
    let ts = sorted_set(graph, terminals, "T")?;
    let k = k.max(3);
    if ts.is_empty() {
        return longest_cycle(graph, k, cfg);
    }
    if ts.len() >= k {
        return t_cycle(graph, &ts, cfg);
    }
    weighted_t_cycle(graph, &ts, k, cfg)
}

fn weighted_t_cycle(
    graph: &ColoredWeightedGraph,
    ts: &[usize],
    k: usize,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Cycle>>> {
    let n = graph.n();
    let t = ts[0];
    let s = n;
    // s and t share color 1; every other vertex has its own color.
    let mut colors = vec![0u32; n + 1];
    let mut next = 2;
    for v in 0..n {
        if v == t {
            colors[v] = 1;
        } else {
            colors[v] = next;
            next += 1;
        }
    }
    colors[s] = 1;
    let mut weights = vec![2u64; n + 1];
    for &u in ts {
        weights[u] = 3;
    }
    weights[s] = 1;
    let edges = with_new_vertices(graph, &[graph.neighbors(t).to_vec()]);
    let g = ColoredWeightedGraph::new(n + 1, edges, colors, weights)?;
    let w = 2 * k as u64 + ts.len() as u64;
    let q = LinkageQuery::new(vec![s], vec![t], 1, k, w);
    let Some(sol) = solve(&g, &q, cfg)? else {
        return Ok(None);
    };
    let cycle = close_cycle(&sol);
    validate_cycle(graph, &cycle)?;
    require_cover(&cycle, ts)?;
    if cycle.len() < k {
        return Err(Error::Contract(format!("cycle of length {} below k = {k}", cycle.len())));
    }
    Ok(Some(Reduced {
        length: cycle.len(),
        answer: cycle,
        trace: trace(format!("twin of {t}; weights T=3, twin=1, rest=2; w = 2k + |T| = {w}"), 1, sol),
    }))
}

fn require_cover(vertices: &[usize], ts: &[usize]) -> Result<()> {
    if let Some(t) = ts.iter().find(|t| !vertices.contains(t)) {
        return Err(Error::Contract(format!("answer misses terminal {t}")));
    }
    Ok(())
}

/// Builds the depot-split graph for a guessed set `closing` of last petal
/// vertices: `p` source twins adjacent to the other depot neighbors and `p`
/// sink twins adjacent to `closing`. The depot itself becomes isolated.
fn split_depot(
    graph: &ColoredWeightedGraph,
    depot: usize,
    closing: &[usize],
    p: usize,
) -> (Vec<(usize, usize)>, Vec<usize>, Vec<usize>) {
    let opening: Vec<usize> = graph
        .neighbors(depot)
        .iter()
        .copied()
        .filter(|u| !closing.contains(u))
        .collect();
    let mut twins = vec![opening; p];
    twins.extend(vec![closing.to_vec(); p]);
    let edges: Vec<(usize, usize)> = with_new_vertices(graph, &twins)
        .into_iter()
        .filter(|&(u, v)| u != depot && v != depot)
        .collect();
    let n = graph.n();
    (edges, (n..n + p).collect(), (n + p..n + 2 * p).collect())
}

fn flower_from(sol: &LinkageSolution, depot: usize) -> Flower {
    let mut petals: Vec<Vec<usize>> = sol.paths.iter().map(|p| p[1..p.len() - 1].to_vec()).collect();
    petals.sort();
    Flower { depot, petals }
}

/// Shared driver of the flower reductions: one solve per guessed set of
/// closing neighbors, best flower kept.
fn solve_flower(
    graph: &ColoredWeightedGraph,
    depot: usize,
    p: usize,
    query_for: &dyn Fn(&[usize], &[usize]) -> LinkageQuery,
    shape: &dyn Fn(usize, Vec<(usize, usize)>) -> Result<ColoredWeightedGraph>,
    accept: &dyn Fn(&Flower, &LinkageSolution) -> Result<()>,
    construction: &str,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Flower>>> {
    if p == 0 {
        return Err(Error::invalid("flower: p must be >= 1"));
    }
    let nbrs = graph.neighbors(depot).to_vec();
    if nbrs.len() < 2 * p {
        return Ok(None);
    }
    let mut best: Option<Reduced<Flower>> = None;
    for closing in subsets_of(&nbrs, p) {
        let (edges, sources, sinks) = split_depot(graph, depot, &closing, p);
        let g = shape(graph.n() + 2 * p, edges)?;
        let q = query_for(&sources, &sinks);
        let Some(sol) = solve(&g, &q, cfg)? else {
            continue;
        };
        let flower = flower_from(&sol, depot);
        let length = flower.length();
        if best.as_ref().is_some_and(|b| b.length <= length) {
            continue;
        }
        validate_flower(graph, &flower)?;
        accept(&flower, &sol)?;
        best = Some(Reduced {
            length,
            answer: flower,
            trace: trace(format!("{construction}; closing neighbors {closing:?}"), p, sol),
        });
    }
    Ok(best)
}

fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Minimum total length flower of `p` petals (each a cycle of at least three
/// vertices through the depot) covering `terminals`.
pub fn vrp_flower(
    graph: &ColoredWeightedGraph,
    depot: usize,
    terminals: &[usize],
    p: usize,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Flower>>> {
    check_vertex(graph, depot, "depot")?;
    let ts = sorted_set(graph, terminals, "T")?;
    if ts.contains(&depot) {
        return Err(Error::invalid("vrp: the depot cannot be a terminal"));
    }
    let kk = ts.len() + 1;
    let colors_for = |size: usize| {
        let mut colors = vec![1u32; size];
        for (i, &u) in ts.iter().enumerate() {
            colors[u] = i as u32 + 2;
        }
        colors
    };
    solve_flower(
        graph,
        depot,
        p,
        &|s, t| LinkageQuery::new(s.to_vec(), t.to_vec(), p, kk, kk as u64),
        &|size, edges| ColoredWeightedGraph::new(size, edges, colors_for(size), vec![1; size]),
        &|flower, _| require_cover(&flower.petals.concat(), &ts),
        &format!("depot split into {} twins; terminals colored 2..{kk}", 2 * p),
        cfg,
    )
}

/// Minimum total length flower of `p` petals carrying `k` distinct non-depot
/// vertices of total profit (vertex weight) exactly `w`.
pub fn vrp_profits(
    graph: &ColoredWeightedGraph,
    depot: usize,
    p: usize,
    k: usize,
    w: u64,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<Flower>>> {
    check_vertex(graph, depot, "depot")?;
    // Twins and the depot weigh more than w, so they are never picked.
    let heavy = w + 1;
    solve_flower(
        graph,
        depot,
        p,
        &|s, t| LinkageQuery::new(s.to_vec(), t.to_vec(), p, k, w),
        &|size, edges| {
            let mut weights = graph.weights().to_vec();
            weights[depot] = heavy;
            weights.resize(size, heavy);
            ColoredWeightedGraph::new(size, edges, (1..=size as u32).collect(), weights)
        },
        &|_, sol| {
            let profit: u64 = sol.certificate.iter().map(|&v| graph.weight(v)).sum();
            if sol.certificate.iter().any(|&v| v >= graph.n() || v == depot) || profit != w {
                return Err(Error::Contract("profit certificate uses the depot".into()));
            }
            Ok(())
        },
        "depot split with bijective coloring, vertex profits as weights",
        cfg,
    )
}

/// Minimum-length `k`-colored `(S, T)`-linkage of order `p` with at least
/// `ell` vertices.
pub fn longest_k_colored_linkage(
    graph: &ColoredWeightedGraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
    ell: usize,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<LinkageSolution>>> {
    let unit = graph.with_weights(vec![1; graph.n()])?;
    let query = LinkageQuery::new(sources.to_vec(), sinks.to_vec(), p, k, k as u64);
    query.check(graph.n())?;
    if p >= ell {
        let Some(sol) = solve(&unit, &query, cfg)? else {
            return Ok(None);
        };
        return Ok(Some(Reduced {
            length: sol.total_length,
            answer: sol.clone(),
            trace: trace("p >= l: plain k-colored solve", 0, sol),
        }));
    }
    let n = graph.n();
    let m = graph.edges().len();
    let extra = (ell - p) as u64;
    // Subdivision vertices get fresh colors. With k = 0 the originals are
    // made too heavy to be picked.
    let (sub_w, orig_w, w) = if k == 0 {
        (1, extra + 1, extra)
    } else {
        (2 * k as u64, 1, extra * 2 * k as u64 + k as u64)
    };
    let mut edges = Vec::with_capacity(2 * m);
    let mut colors = graph.colors().to_vec();
    let mut weights = vec![orig_w; n];
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        edges.push((u, n + i));
        edges.push((n + i, v));
        colors.push((n + i + 1) as u32);
        weights.push(sub_w);
    }
    let g = ColoredWeightedGraph::new(n + m, edges, colors, weights)?;
    let q = LinkageQuery::new(sources.to_vec(), sinks.to_vec(), p, k + ell - p, w);
    let Some(sol) = solve(&g, &q, cfg)? else {
        return Ok(None);
    };
    let paths: Vec<Vec<usize>> = sol
        .paths
        .iter()
        .map(|path| path.iter().copied().filter(|&v| v < n).collect())
        .collect();
    let certificate: Vec<usize> = sol.certificate.iter().copied().filter(|&v| v < n).collect();
    let back = LinkageSolution::new(paths, certificate);
    crate::graph::validate_solution(&unit, &query, &back).map_err(Error::Validation)?;
    if back.total_length < ell {
        return Err(Error::Contract(format!("linkage of length {} below l = {ell}", back.total_length)));
    }
    Ok(Some(Reduced {
        length: back.total_length,
        answer: back,
        trace: trace(format!("edges subdivided; k' = k + l - p, w = {w}"), 0, sol),
    }))
}

/// Replaces every edge of weight `c` by a path through `2c - 1` new vertices
/// of one extra dummy color and weight one. A path of edge weight `W` then
/// has `2W + 1` vertices. `edge_weights` follows `graph.edges()`.
pub fn subdivide_for_edge_weights(
    graph: &ColoredWeightedGraph,
    edge_weights: &[u64],
    max_weight: u64,
) -> Result<ColoredWeightedGraph> {
    if edge_weights.len() != graph.edges().len() {
        return Err(Error::invalid(format!(
            "edge weights: {} given for {} edges",
            edge_weights.len(),
            graph.edges().len()
        )));
    }
    if let Some(i) = edge_weights.iter().position(|&c| c == 0 || c > max_weight) {
        return Err(Error::invalid(format!(
            "edge weights[{i}] = {} outside [1, {max_weight}]",
            edge_weights[i]
        )));
    }
    let n = graph.n();
    let added: u64 = edge_weights.iter().map(|&c| 2 * c - 1).sum();
    let total = n + added as usize;
    let palette = graph.colors().iter().copied().max().unwrap_or(0) + 1;
    let mut colors = graph.colors().to_vec();
    let mut weights = graph.weights().to_vec();
    colors.resize(total, palette);
    weights.resize(total, 1);
    let mut edges = Vec::new();
    let mut next = n;
    for (&(u, v), &c) in graph.edges().iter().zip(edge_weights) {
        let mut prev = u;
        for _ in 0..2 * c - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    ColoredWeightedGraph::new(total, edges, colors, weights)
}

/// Minimum edge-weighted length of a `(k, w)`-colored linkage, through the
/// subdivided graph. Original weights are scaled by `k + 2` and the target
/// becomes `(k + 2) w + 1`, which forces exactly one dummy vertex into the
/// certificate.
pub fn weighted_colored_linkage(
    graph: &ColoredWeightedGraph,
    edge_weights: &[u64],
    query: &LinkageQuery,
    cfg: &SolverConfig,
) -> Result<Option<Reduced<LinkageSolution>>> {
    query.check(graph.n())?;
    let scale = query.k as u64 + 2;
    let scaled = graph.with_weights(graph.weights().iter().map(|&x| x * scale).collect())?;
    let g = subdivide_for_edge_weights(&scaled, edge_weights, cfg.max_w)?;
    let q = LinkageQuery::new(
        query.sources.clone(),
        query.sinks.clone(),
        query.p,
        query.k + 1,
        scale * query.w + 1,
    );
    let Some(sol) = solve(&g, &q, cfg)? else {
        return Ok(None);
    };
    let n = graph.n();
    let paths: Vec<Vec<usize>> = sol
        .paths
        .iter()
        .map(|path| path.iter().copied().filter(|&v| v < n).collect())
        .collect();
    let certificate: Vec<usize> = sol.certificate.iter().copied().filter(|&v| v < n).collect();
    let back = LinkageSolution::new(paths, certificate);
    crate::graph::validate_solution(graph, query, &back).map_err(Error::Validation)?;
    Ok(Some(Reduced {
        length: (sol.total_length - query.p) / 2,
        answer: back,
        trace: trace("edges subdivided into 2c - 1 dummy vertices", query.p, sol),
    }))
}
