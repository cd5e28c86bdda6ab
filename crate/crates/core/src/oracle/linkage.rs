//! Exhaustive linkage search on small graphs.

use crate::error::{Error, Result};
use crate::graph::{ColoredWeightedGraph, Digraph, LinkageQuery, LinkageSolution};

pub const LINKAGE_MAX_N: usize = 12;
pub const DIGRAPH_MAX_N: usize = 8;

fn guard(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::OracleGuard(format!(
            "{what} limited to n <= {limit}, got {n}"
        )));
    }
    Ok(())
}

/// Every order-`p` linkage of total length at most `max_len`, each listed
/// once with its paths sorted by starting vertex.
pub fn enumerate_linkages(
    graph: &ColoredWeightedGraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    max_len: usize,
) -> Result<Vec<Vec<Vec<usize>>>> {
    guard(graph.n(), LINKAGE_MAX_N, "linkage enumeration")?;
    let mut out = Vec::new();
    let mut is_sink = vec![false; graph.n()];
    for &t in sinks {
        is_sink[t] = true;
    }
    let mut starts: Vec<usize> = sources.to_vec();
    starts.sort_unstable();
    starts.dedup();
    let mut used = vec![false; graph.n()];
    let mut paths = Vec::new();
    extend(
        &|v| graph.neighbors(v),
        &starts,
        &is_sink,
        p,
        max_len,
        0,
        &mut used,
        &mut paths,
        &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend<'g>(
    next: &dyn Fn(usize) -> &'g [usize],
    starts: &[usize],
    is_sink: &[bool],
    p: usize,
    budget: usize,
    first_start: usize,
    used: &mut Vec<bool>,
    paths: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if paths.len() == p {
        out.push(paths.clone());
        return;
    }
    let need = p - paths.len();
    if budget < need {
        return;
    }
    for i in first_start..starts.len() {
        let s = starts[i];
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut path = vec![s];
        let mut found = Vec::new();
        simple_paths(next, is_sink, used, &mut path, budget - (need - 1), &mut found);
        used[s] = false;
        for path in found {
            for &v in &path {
                used[v] = true;
            }
            let len = path.len();
            paths.push(path);
            extend(next, starts, is_sink, p, budget - len, i + 1, used, paths, out);
            let path = paths.pop().unwrap();
            for &v in &path {
                used[v] = false;
            }
        }
    }
}

fn simple_paths<'g>(
    next: &dyn Fn(usize) -> &'g [usize],
    is_sink: &[bool],
    used: &mut Vec<bool>,
    path: &mut Vec<usize>,
    max_len: usize,
    found: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if is_sink[last] {
        found.push(path.clone());
    }
    if path.len() == max_len {
        return;
    }
    for &u in next(last) {
        if !used[u] {
            used[u] = true;
            path.push(u);
            simple_paths(next, is_sink, used, path, max_len, found);
            path.pop();
            used[u] = false;
        }
    }
}

/// Smallest `k`-subset of `vertices` accepted by `accept`, with total weight
/// `w`.
pub fn find_certificate(
    graph: &ColoredWeightedGraph,
    vertices: &[usize],
    k: usize,
    w: u64,
    accept: &dyn Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    fn rec(
        graph: &ColoredWeightedGraph,
        vertices: &[usize],
        from: usize,
        k: usize,
        left: u64,
        chosen: &mut Vec<usize>,
        accept: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return left == 0 && accept(chosen);
        }
        for i in from..vertices.len() {
            if vertices.len() - i < k - chosen.len() {
                break;
            }
            let v = vertices[i];
            let we = graph.weight(v);
            if we > left {
                continue;
            }
            chosen.push(v);
            if rec(graph, vertices, i + 1, k, left - we, chosen, accept) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut chosen = Vec::with_capacity(k);
    rec(graph, &sorted, 0, k, w, &mut chosen, accept).then_some(chosen)
}

/// Minimum length and every linkage attaining it, each with one certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptimum {
    pub length: usize,
    pub witnesses: Vec<LinkageSolution>,
}

pub fn distinct_colors(graph: &ColoredWeightedGraph) -> impl Fn(&[usize]) -> bool + '_ {
    move |xs: &[usize]| {
        let mut c: Vec<u32> = xs.iter().map(|&v| graph.color(v)).collect();
        c.sort_unstable();
        c.windows(2).all(|w| w[0] != w[1])
    }
}

/// Minimum-length `(k, w)`-colored linkage, or `None` when infeasible.
pub fn min_colored_linkage(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
) -> Result<Option<OracleOptimum>> {
    min_linkage_with(graph, query, &distinct_colors(graph))
}

/// Like [`min_colored_linkage`] with an arbitrary independence predicate.
pub fn min_linkage_with(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    independent: &dyn Fn(&[usize]) -> bool,
) -> Result<Option<OracleOptimum>> {
    let all = enumerate_linkages(graph, &query.sources, &query.sinks, query.p, graph.n())?;
    let mut best: Option<OracleOptimum> = None;
    for paths in all {
        let len: usize = paths.iter().map(Vec::len).sum();
        if best.as_ref().is_some_and(|b| len > b.length) {
            continue;
        }
        let vertices: Vec<usize> = paths.iter().flatten().copied().collect();
        if let Some(x) = find_certificate(graph, &vertices, query.k, query.w, independent) {
            let sol = LinkageSolution::new(paths, x);
            match &mut best {
                Some(b) if b.length == len => b.witnesses.push(sol),
                _ => {
                    best = Some(OracleOptimum {
                        length: len,
                        witnesses: vec![sol],
                    })
                }
            }
        }
    }
    Ok(best)
}

/// Whether a feasible linkage of total length at most `max_len` exists.
pub fn has_colored_linkage_upto(
    graph: &ColoredWeightedGraph,
    query: &LinkageQuery,
    max_len: usize,
) -> Result<bool> {
    Ok(min_colored_linkage(graph, query)?.is_some_and(|o| o.length <= max_len))
}

/// Every order-`p` linkage in a digraph with paths sorted by start.
pub fn enumerate_linkages_digraph(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
) -> Result<Vec<Vec<Vec<usize>>>> {
    guard(digraph.n(), DIGRAPH_MAX_N, "digraph linkage enumeration")?;
    let mut out = Vec::new();
    let mut is_sink = vec![false; digraph.n()];
    for &t in sinks {
        is_sink[t] = true;
    }
    let mut starts: Vec<usize> = sources.to_vec();
    starts.sort_unstable();
    starts.dedup();
    let mut used = vec![false; digraph.n()];
    let mut paths = Vec::new();
    extend(
        &|v| digraph.out_neighbors(v),
        &starts,
        &is_sink,
        p,
        digraph.n(),
        0,
        &mut used,
        &mut paths,
        &mut out,
    );
    Ok(out)
}

/// A maximum total length order-`p` linkage of a digraph.
pub fn longest_linkage_digraph(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    let all = enumerate_linkages_digraph(digraph, sources, sinks, p)?;
    Ok(all
        .into_iter()
        .max_by_key(|ps| ps.iter().map(Vec::len).sum::<usize>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = ColoredWeightedGraph::bijective(2, [(0, 1)]).unwrap();
        let all = enumerate_linkages(&g, &[0], &[1], 1, 5).unwrap();
        assert_eq!(all, vec![vec![vec![0, 1]]]);
    }

    #[test]
    fn c4_has_two_paths() {
        // s = 0, a = 1, t = 2, b = 3
        let g = ColoredWeightedGraph::bijective(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let all = enumerate_linkages(&g, &[0], &[2], 1, 4).unwrap();
        assert_eq!(all.len(), 2);
        let q = LinkageQuery::new(vec![0], vec![2], 1, 3, 3);
        let opt = min_colored_linkage(&g, &q).unwrap().unwrap();
        assert_eq!(opt.length, 3);
        assert_eq!(opt.witnesses.len(), 2);
        let q4 = LinkageQuery::new(vec![0], vec![2], 1, 4, 4);
        assert!(min_colored_linkage(&g, &q4).unwrap().is_none());
    }

    #[test]
    fn too_many_paths() {
        let g = ColoredWeightedGraph::bijective(3, [(0, 1), (1, 2)]).unwrap();
        assert!(enumerate_linkages(&g, &[0, 1], &[2], 2, 3).unwrap().is_empty());
    }

    #[test]
    fn k_zero_is_shortest() {
        let g = ColoredWeightedGraph::bijective(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let q = LinkageQuery::new(vec![0], vec![3], 1, 0, 0);
        assert_eq!(min_colored_linkage(&g, &q).unwrap().unwrap().length, 2);
    }

    #[test]
    fn digraph_longest() {
        let d = Digraph::new(2, [(0, 1)]).unwrap();
        let best = longest_linkage_digraph(&d, &[0], &[1], 1).unwrap().unwrap();
        assert_eq!(best, vec![vec![0, 1]]);
        assert!(longest_linkage_digraph(&d, &[1], &[0], 1).unwrap().is_none());
    }
}
