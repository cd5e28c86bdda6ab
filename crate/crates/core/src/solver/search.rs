//! Budgeted exhaustive search for a certified linkage in a small residual
//! graph.

use crate::graph::ColoredWeightedGraph;

pub(crate) enum Search {
    Found(Vec<Vec<usize>>, Vec<usize>),
    NotFound,
    OutOfBudget,
}

struct Ctx<'a> {
    graph: &'a ColoredWeightedGraph,
    sources: &'a [usize],
    is_sink: Vec<bool>,
    to_sink: Vec<usize>,
    certify: &'a dyn Fn(&[Vec<usize>]) -> Option<Vec<usize>>,
    budget: usize,
    steps: usize,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
    bound: usize,
}

/// Shortest linkage of total length at most `max_len` from `sources` (one
/// path each) to distinct `sinks` that `certify` accepts.
pub(crate) fn search_linkage(
    graph: &ColoredWeightedGraph,
    sources: &[usize],
    sinks: &[usize],
    max_len: usize,
    certify: &dyn Fn(&[Vec<usize>]) -> Option<Vec<usize>>,
    budget: usize,
) -> Search {
    let n = graph.n();
    let mut is_sink = vec![false; n];
    for &t in sinks {
        is_sink[t] = true;
    }
    let to_sink = graph
        .bfs_distances(sinks)
        .into_iter()
        .map(|d| d.map_or(usize::MAX / 4, |d| d + 1))
        .collect();
    let mut ctx = Ctx {
        graph,
        sources,
        is_sink,
        to_sink,
        certify,
        budget,
        steps: 0,
        best: None,
        bound: max_len,
    };
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    let complete = next_path(&mut ctx, &mut used, &mut paths, 0);
    match (ctx.best, complete) {
        (Some((p, x)), _) => Search::Found(p, x),
        (None, true) => Search::NotFound,
        (None, false) => Search::OutOfBudget,
    }
}

/// Returns false when the budget ran out.
fn next_path(ctx: &mut Ctx<'_>, used: &mut [bool], paths: &mut Vec<Vec<usize>>, len: usize) -> bool {
    let t = paths.len();
    if t == ctx.sources.len() {
        if len <= ctx.bound {
            if let Some(x) = (ctx.certify)(paths) {
                ctx.bound = len.saturating_sub(1);
                ctx.best = Some((paths.clone(), x));
            }
        }
        return true;
    }
    let s = ctx.sources[t];
    if used[s] {
        return true;
    }
    used[s] = true;
    let mut path = vec![s];
    let ok = grow(ctx, used, paths, &mut path, len + 1);
    used[s] = false;
    ok
}

fn grow(
    ctx: &mut Ctx<'_>,
    used: &mut [bool],
    paths: &mut Vec<Vec<usize>>,
    path: &mut Vec<usize>,
    len: usize,
) -> bool {
    ctx.steps += 1;
    if ctx.steps > ctx.budget {
        return false;
    }
    let last = *path.last().unwrap();
    let rest = ctx.sources.len() - paths.len() - 1;
    if len + ctx.to_sink[last] - 1 + 2 * rest > ctx.bound {
        return true;
    }
    if ctx.is_sink[last] && path.len() > 1 {
        paths.push(path.clone());
        let ok = next_path(ctx, used, paths, len);
        paths.pop();
        if !ok {
            return false;
        }
    }
    let nbrs: Vec<usize> = ctx.graph.neighbors(last).to_vec();
    for u in nbrs {
        if used[u] {
            continue;
        }
        used[u] = true;
        path.push(u);
        let ok = grow(ctx, used, paths, path, len + 1);
        path.pop();
        used[u] = false;
        if !ok {
            return false;
        }
    }
    true
}
