//! Application-level brute force for the reductions.

use super::linkage::{enumerate_linkages, find_certificate};
use crate::error::{Error, Result};
use crate::graph::{ColoredWeightedGraph, LinkageQuery};

pub const APPS_MAX_N: usize = 10;

fn guard(graph: &ColoredWeightedGraph) -> Result<()> {
    if graph.n() > APPS_MAX_N {
        return Err(Error::OracleGuard(format!(
            "application brute force limited to n <= {APPS_MAX_N}, got {}",
            graph.n()
        )));
    }
    Ok(())
}

fn paths_from(graph: &ColoredWeightedGraph, path: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize])) {
    visit(path);
    let last = *path.last().unwrap();
    for &u in graph.neighbors(last) {
        if !used[u] {
            used[u] = true;
            path.push(u);
            paths_from(graph, path, used, visit);
            path.pop();
            used[u] = false;
        }
    }
}

/// Every simple path starting at `s`, the one-vertex path included.
fn each_path(graph: &ColoredWeightedGraph, s: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut used = vec![false; graph.n()];
    used[s] = true;
    paths_from(graph, &mut vec![s], &mut used, visit);
}

/// Fewest vertices of an `(s, t)`-path with at least `k` vertices.
pub fn shortest_path_at_least(graph: &ColoredWeightedGraph, s: usize, t: usize, k: usize) -> Result<Option<usize>> {
    guard(graph)?;
    let mut best: Option<usize> = None;
    each_path(graph, s, &mut |p| {
        if p.last() == Some(&t) && p.len() >= k && best.is_none_or(|b| p.len() < b) {
            best = Some(p.len());
        }
    });
    Ok(best)
}

/// Every simple cycle of at least three vertices, once: it starts at its
/// smallest vertex and its second vertex is smaller than its last.
pub fn cycles(graph: &ColoredWeightedGraph) -> Result<Vec<Vec<usize>>> {
    guard(graph)?;
    let mut out = Vec::new();
    for s in 0..graph.n() {
        each_path(graph, s, &mut |p| {
            if p.len() >= 3
                && p.iter().all(|&v| v >= s)
                && p[1] < p[p.len() - 1]
                && graph.has_edge(p[p.len() - 1], s)
            {
                out.push(p.to_vec());
            }
        });
    }
    Ok(out)
}

/// Shortest cycle through all of `terminals` with at least `max(k, 3)`
/// vertices.
pub fn shortest_cycle_through(graph: &ColoredWeightedGraph, terminals: &[usize], k: usize) -> Result<Option<usize>> {
    Ok(cycles(graph)?
        .iter()
        .filter(|c| c.len() >= k && terminals.iter().all(|t| c.contains(t)))
        .map(Vec::len)
        .min())
}

/// Every cycle through `depot` with at least two other vertices, as the list
/// of those vertices, once per orientation class.
pub fn petals(graph: &ColoredWeightedGraph, depot: usize) -> Result<Vec<Vec<usize>>> {
    guard(graph)?;
    let mut out = Vec::new();
    each_path(graph, depot, &mut |p| {
        if p.len() >= 3 && p[1] < p[p.len() - 1] && graph.has_edge(p[p.len() - 1], depot) {
            out.push(p[1..].to_vec());
        }
    });
    Ok(out)
}

/// Smallest total edge count of `p` petals at `depot`, pairwise disjoint
/// away from it, whose vertex lists satisfy `accept`.
pub fn min_flower(
    graph: &ColoredWeightedGraph,
    depot: usize,
    p: usize,
    accept: &dyn Fn(&[&Vec<usize>]) -> bool,
) -> Result<Option<usize>> {
    let all = petals(graph, depot)?;
    let mut best: Option<usize> = None;
    fn rec<'a>(
        all: &'a [Vec<usize>],
        from: usize,
        p: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<&'a Vec<usize>>,
        accept: &dyn Fn(&[&Vec<usize>]) -> bool,
        best: &mut Option<usize>,
    ) {
        if chosen.len() == p {
            let len: usize = chosen.iter().map(|c| c.len() + 1).sum();
            if best.is_none_or(|b| len < b) && accept(chosen) {
                *best = Some(len);
            }
            return;
        }
        for i in from..all.len() {
            let petal = &all[i];
            if petal.iter().any(|&v| used[v]) {
                continue;
            }
            petal.iter().for_each(|&v| used[v] = true);
            chosen.push(petal);
            rec(all, i + 1, p, used, chosen, accept, best);
            chosen.pop();
            petal.iter().for_each(|&v| used[v] = false);
        }
    }
    let mut used = vec![false; graph.n()];
    rec(&all, 0, p, &mut used, &mut Vec::new(), accept, &mut best);
    Ok(best)
}

/// Smallest flower of `p` petals covering `terminals`.
pub fn min_covering_flower(
    graph: &ColoredWeightedGraph,
    depot: usize,
    terminals: &[usize],
    p: usize,
) -> Result<Option<usize>> {
    min_flower(graph, depot, p, &|petals| {
        terminals.iter().all(|t| petals.iter().any(|pt| pt.contains(t)))
    })
}

/// Smallest flower of `p` petals carrying `k` vertices of total weight `w`.
pub fn min_profit_flower(
    graph: &ColoredWeightedGraph,
    depot: usize,
    p: usize,
    k: usize,
    w: u64,
) -> Result<Option<usize>> {
    min_flower(graph, depot, p, &|petals| {
        let vs: Vec<usize> = petals.iter().flat_map(|pt| pt.iter().copied()).collect();
        find_certificate(graph, &vs, k, w, &|_| true).is_some()
    })
}

/// Shortest order-`p` linkage with at least `ell` vertices containing `k`
/// vertices of distinct colors.
pub fn min_k_colored_at_least(
    graph: &ColoredWeightedGraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
    ell: usize,
) -> Result<Option<usize>> {
    let unit = graph.with_weights(vec![1; graph.n()])?;
    let distinct = super::distinct_colors(&unit);
    Ok(enumerate_linkages(&unit, sources, sinks, p, graph.n())?
        .into_iter()
        .filter_map(|paths| {
            let vs: Vec<usize> = paths.iter().flatten().copied().collect();
            (vs.len() >= ell && find_certificate(&unit, &vs, k, k as u64, &distinct).is_some()).then_some(vs.len())
        })
        .min())
}

/// Smallest total edge weight of a `(k, w)`-colored linkage.
pub fn min_weighted_colored(
    graph: &ColoredWeightedGraph,
    edge_weights: &[u64],
    query: &LinkageQuery,
) -> Result<Option<u64>> {
    let distinct = super::distinct_colors(graph);
    let weight = |u: usize, v: usize| edge_weights[graph.edge_index(u, v).expect("path edge")];
    Ok(enumerate_linkages(graph, &query.sources, &query.sinks, query.p, graph.n())?
        .into_iter()
        .filter_map(|paths| {
            let vs: Vec<usize> = paths.iter().flatten().copied().collect();
            find_certificate(graph, &vs, query.k, query.w, &distinct)?;
            Some(paths.iter().map(|p| p.windows(2).map(|e| weight(e[0], e[1])).sum::<u64>()).sum())
        })
        .min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> ColoredWeightedGraph {
        ColoredWeightedGraph::bijective(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap()
    }

    #[test]
    fn cycle_listing() {
        let k4 = ColoredWeightedGraph::bijective(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // Four triangles and three 4-cycles.
        assert_eq!(cycles(&k4).unwrap().len(), 7);
        assert_eq!(cycles(&c6()).unwrap().len(), 1);
    }

    #[test]
    fn cycle_through_terminals() {
        assert_eq!(shortest_cycle_through(&c6(), &[0, 3], 3).unwrap(), Some(6));
        let tree = ColoredWeightedGraph::bijective(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(shortest_cycle_through(&tree, &[0], 3).unwrap(), None);
    }

    #[test]
    fn two_triangles_at_a_depot() {
        let g = ColoredWeightedGraph::bijective(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(min_covering_flower(&g, 0, &[1, 3], 2).unwrap(), Some(6));
        assert_eq!(min_covering_flower(&g, 0, &[1, 3], 1).unwrap(), None);
        assert_eq!(min_covering_flower(&g, 0, &[1], 3).unwrap(), None);
    }

    #[test]
    fn path_length_floor() {
        let g = ColoredWeightedGraph::bijective(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(shortest_path_at_least(&g, 0, 2, 2).unwrap(), Some(2));
        assert_eq!(shortest_path_at_least(&g, 0, 2, 3).unwrap(), Some(3));
        assert_eq!(shortest_path_at_least(&g, 0, 2, 4).unwrap(), None);
    }
}
