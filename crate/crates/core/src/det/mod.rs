//! Deterministic longest directed (S,T)-linkage.
//!
//! The instance is rewritten to a single source `s` and sink `t`. A linkage
//! whose paths all have fewer than `2k` internal vertices is found by
//! guessing the path lengths and separating the paths with a separation
//! family. Otherwise some path is long, and the last `k` vertices of a
//! long path are fixed by a separation family while flow completes the rest.

mod hash;
mod paths;

pub use hash::{perfect_hash_family, separation_family, PerfectHashFamily, SeparationFamily};
pub use paths::{exact_length_path, vertex_disjoint_paths_flow};

use crate::error::{Error, Result};
use crate::flow::disjoint_paths;
use crate::graph::Digraph;
use paths::{exact_length_path_in, Families};
use std::collections::{HashMap, HashSet, VecDeque};

/// Adds `s = n` with arcs to `sources` and `t = n + 1` with arcs from
/// `sinks`.
pub fn st_normalize(digraph: &Digraph, sources: &[usize], sinks: &[usize]) -> (Digraph, usize, usize) {
    let n = digraph.n();
    let (s, t) = (n, n + 1);
    let mut arcs = digraph.arcs().to_vec();
    let mut src: Vec<usize> = sources.to_vec();
    src.sort_unstable();
    src.dedup();
    let mut snk: Vec<usize> = sinks.to_vec();
    snk.sort_unstable();
    snk.dedup();
    arcs.extend(src.iter().map(|&v| (s, v)));
    arcs.extend(snk.iter().map(|&v| (v, t)));
    let d = Digraph::new(n + 2, arcs).expect("normalized digraph is simple");
    (d, s, t)
}

/// Which branch produced a linkage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetCase {
    Flow,
    Short,
    Main,
}

/// A linkage of order `p` and total length at least `k` (vertices on the
/// paths), or `None` when none exists.
pub fn solve_longest_linkage(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
) -> Result<Option<Vec<Vec<usize>>>> {
    Ok(solve_with_case(digraph, sources, sinks, p, k)?.map(|(paths, _)| paths))
}

/// As [`solve_longest_linkage`], also naming the branch that succeeded.
pub fn solve_with_case(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
) -> Result<Option<(Vec<Vec<usize>>, DetCase)>> {
    let n = digraph.n();
    if let Some(&v) = sources.iter().chain(sinks).find(|&&v| v >= n) {
        return Err(Error::invalid(format!("terminal {v} out of range 0..{n}")));
    }
    if p == 0 {
        return Ok((k == 0).then(|| (Vec::new(), DetCase::Flow)));
    }
    if k > n || p > n {
        return Ok(None);
    }
    let found = if k <= p {
        disjoint_paths(n, digraph.arcs(), sources, sinks, p, &vec![false; n], false)
            .map(|ps| (ps, DetCase::Flow))
    } else {
        short_case(digraph, sources, sinks, p, k)
            .map(|ps| (ps, DetCase::Short))
            .or_else(|| main_case(digraph, sources, sinks, p, k).map(|ps| (ps, DetCase::Main)))
    };
    if let Some((paths, _)) = &found {
        validate_directed_linkage(digraph, sources, sinks, p, k, paths)?;
    }
    Ok(found.map(|(mut ps, case)| {
        ps.sort();
        (ps, case)
    }))
}

fn strip(path: &[usize]) -> Vec<usize> {
    path[1..path.len() - 1].to_vec()
}

fn class_key(f: &[u8], class: u8) -> Vec<bool> {
    f.iter().map(|&c| c == class).collect()
}

/// Path lengths `k_1..k_p` in `[1, hi)` with sum in `[lo, n]`, in
/// lexicographic order.
fn compositions(p: usize, lo: usize, hi: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(p: usize, lo: usize, hi: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let sum: usize = cur.iter().sum();
        if cur.len() == p {
            if sum >= lo {
                out.push(cur.clone());
            }
            return;
        }
        let rest = p - cur.len() - 1;
        for x in 1..hi {
            if sum + x + rest > n {
                break;
            }
            cur.push(x);
            rec(p, lo, hi, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(p, lo, hi, n, &mut Vec::with_capacity(p), &mut out);
    out
}

/// Linkages whose paths all have fewer than `2(k + 2)` internal vertices in
/// the normalized digraph.
pub fn short_case(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
) -> Option<Vec<Vec<usize>>> {
    let n = digraph.n();
    let (d, s, t) = st_normalize(digraph, sources, sinks);
    let kk = k + 2;
    let mut families = Families::default();
    let mut memo: HashMap<(Vec<bool>, usize), Option<Vec<usize>>> = HashMap::new();
    for sizes in compositions(p, kk - 2, 2 * kk, n) {
        let sep = separation_family(n, &sizes);
        'f: for f in &sep.functions {
            let mut found = Vec::with_capacity(p);
            for (i, &ki) in sizes.iter().enumerate() {
                let mut allowed = class_key(f, i as u8);
                let key = (allowed.clone(), ki);
                let path = match memo.get(&key) {
                    Some(r) => r.clone(),
                    None => {
                        allowed.extend([false, false]);
                        let r = exact_length_path_in(&d, s, t, ki, &allowed, &mut families);
                        memo.insert(key, r.clone());
                        r
                    }
                };
                match path {
                    Some(path) => found.push(strip(&path)),
                    None => continue 'f,
                }
            }
            return Some(found);
        }
    }
    None
}

/// Distances to `t` (in arcs) inside the subgraph on `allowed` plus `t`.
fn distances_to(d: &Digraph, t: usize, allowed: &[bool]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; d.n()];
    dist[t] = 0;
    let mut queue = VecDeque::from([t]);
    while let Some(v) = queue.pop_front() {
        for &u in d.in_neighbors(v) {
            if allowed[u] && dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Linkages with a path of at least `2(k + 2)` internal vertices in the
/// normalized digraph: the last `k + 2` of them are guessed by a separation
/// family and the remaining paths are routed by flow.
pub fn main_case(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
) -> Option<Vec<Vec<usize>>> {
    let n = digraph.n();
    let (d, s, t) = st_normalize(digraph, sources, sinks);
    let kk = k + 2;
    let mut tried: HashSet<Vec<bool>> = HashSet::new();
    for q in 1..=p {
        let mut sizes = vec![kk; q];
        sizes.extend(std::iter::repeat(2 * kk).take(p - q));
        sizes.push(kk);
        let sep = separation_family(n, &sizes);
        for f in &sep.functions {
            for i in 0..p {
                let mut allowed = class_key(f, i as u8);
                if !tried.insert(allowed.clone()) {
                    continue;
                }
                allowed.extend([false, false]);
                let dist = distances_to(&d, t, &allowed);
                for v in 0..n {
                    if !allowed[v] || dist[v] != kk {
                        continue;
                    }
                    let mut tail = vec![v];
                    let mut x = v;
                    while x != t {
                        x = *d
                            .out_neighbors(x)
                            .iter()
                            .find(|&&y| dist[y].wrapping_add(1) == dist[x] && (y == t || allowed[y]))
                            .expect("distance layers are consistent");
                        tail.push(x);
                    }
                    let mut forbidden = vec![false; d.n()];
                    for &y in &tail[1..tail.len() - 1] {
                        forbidden[y] = true;
                    }
                    if let Some(mut ps) = vertex_disjoint_paths_flow(&d, s, t, Some(v), p, &forbidden) {
                        ps[0].extend_from_slice(&tail[1..]);
                        return Some(ps.iter().map(|q| strip(q)).collect());
                    }
                }
            }
        }
    }
    None
}

/// Checks that `paths` is an order-`p` linkage from `sources` to `sinks` of
/// total length at least `k`.
pub fn validate_directed_linkage(
    digraph: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    p: usize,
    k: usize,
    paths: &[Vec<usize>],
) -> Result<()> {
    let fail = |m: String| Err(Error::Contract(m));
    if paths.len() != p {
        return fail(format!("expected {p} paths, got {}", paths.len()));
    }
    let mut seen = HashSet::new();
    for (i, path) in paths.iter().enumerate() {
        let (Some(first), Some(last)) = (path.first(), path.last()) else {
            return fail(format!("path {i} is empty"));
        };
        if !sources.contains(first) || !sinks.contains(last) {
            return fail(format!("path {i} does not run from S to T"));
        }
        if let Some(w) = path.windows(2).find(|w| !digraph.has_arc(w[0], w[1])) {
            return fail(format!("path {i} uses missing arc {}->{}", w[0], w[1]));
        }
        if let Some(v) = path.iter().find(|&&v| !seen.insert(v)) {
            return fail(format!("vertex {v} used twice"));
        }
    }
    let total: usize = paths.iter().map(Vec::len).sum();
    if total < k {
        return fail(format!("total length {total} below {k}"));
    }
    Ok(())
}
