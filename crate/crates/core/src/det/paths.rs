//! Exact-length paths by hash-family subset DP and flow completion of
//! internally disjoint paths.

use super::hash::perfect_hash_family;
use crate::flow::FlowNetwork;
use crate::graph::Digraph;
use std::collections::{BTreeMap, HashMap};

/// Perfect hash families keyed by `(n, ℓ)`.
#[derive(Default)]
pub(crate) struct Families {
    cache: HashMap<(usize, usize), Vec<Vec<u32>>>,
}

impl Families {
    pub(crate) fn get(&mut self, n: usize, l: usize) -> &[Vec<u32>] {
        self.cache
            .entry((n, l))
            .or_insert_with(|| perfect_hash_family(n, l).functions)
    }
}

/// A directed `(s, t)`-path with exactly `k` internal vertices.
pub fn exact_length_path(digraph: &Digraph, s: usize, t: usize, k: usize) -> Option<Vec<usize>> {
    let allowed = vec![true; digraph.n()];
    exact_length_path_in(digraph, s, t, k, &allowed, &mut Families::default())
}

/// As [`exact_length_path`] with internal vertices restricted to `allowed`.
pub(crate) fn exact_length_path_in(
    digraph: &Digraph,
    s: usize,
    t: usize,
    k: usize,
    allowed: &[bool],
    families: &mut Families,
) -> Option<Vec<usize>> {
    if k == 0 {
        return None;
    }
    let n = digraph.n();
    let mut index = vec![usize::MAX; n];
    let mut universe = Vec::new();
    for v in 0..n {
        if allowed[v] && v != s && v != t {
            index[v] = universe.len();
            universe.push(v);
        }
    }
    if k > universe.len() {
        return None;
    }
    for h in families.get(universe.len(), k) {
        let color = |v: usize| 1u64 << h[index[v]];
        // layers[j]: (v, used colors) -> predecessor state, j + 1 internal vertices.
        let mut layers: Vec<BTreeMap<(usize, u64), (usize, u64)>> = Vec::with_capacity(k);
        let mut first = BTreeMap::new();
        for &v in digraph.out_neighbors(s) {
            if index[v] != usize::MAX {
                first.insert((v, color(v)), (s, 0));
            }
        }
        layers.push(first);
        for j in 1..k {
            let mut next = BTreeMap::new();
            for &(v, mask) in layers[j - 1].keys() {
                for &u in digraph.out_neighbors(v) {
                    if index[u] == usize::MAX || mask & color(u) != 0 {
                        continue;
                    }
                    next.entry((u, mask | color(u))).or_insert((v, mask));
                }
            }
            layers.push(next);
        }
        let end = layers[k - 1]
            .keys()
            .find(|&&(v, _)| digraph.has_arc(v, t))
            .copied();
        if let Some(mut state) = end {
            let mut path = vec![t];
            for j in (0..k).rev() {
                path.push(state.0);
                state = layers[j][&state];
            }
            path.push(s);
            path.reverse();
            return Some(path);
        }
    }
    None
}

/// `p` paths out of `s` sharing no vertex but `s` and `t`: one ending at
/// `target` and avoiding `t` (listed first) when a target is given, the rest
/// ending at `t`. Vertices flagged in `forbidden` are unusable.
pub fn vertex_disjoint_paths_flow(
    digraph: &Digraph,
    s: usize,
    t: usize,
    target: Option<usize>,
    p: usize,
    forbidden: &[bool],
) -> Option<Vec<Vec<usize>>> {
    let n = digraph.n();
    let sink = 2 * n;
    let to_t = p - usize::from(target.is_some());
    let mut net = FlowNetwork::new(2 * n + 1);
    let open = |v: usize| !forbidden[v];
    for v in 0..n {
        if v == s || !open(v) {
            continue;
        }
        if Some(v) == target {
            net.add_edge(2 * v, sink, 1, 0);
        } else if v == t {
            net.add_edge(2 * v, sink, to_t as i64, 0);
        } else {
            net.add_edge(2 * v, 2 * v + 1, 1, 0);
        }
    }
    let mut arc_ids = Vec::new();
    for &(u, v) in digraph.arcs() {
        if !open(u) || !open(v) || u == t || Some(u) == target || v == s {
            continue;
        }
        arc_ids.push((net.add_edge(2 * u + 1, 2 * v, 1, 0), u, v));
    }
    if net.max_flow(2 * s + 1, sink, p as i64) < p as i64 {
        return None;
    }
    let mut left: Vec<(usize, usize, i64)> = arc_ids
        .iter()
        .map(|&(id, u, v)| (u, v, net.flow(id)))
        .filter(|a| a.2 > 0)
        .collect();
    let mut paths = Vec::with_capacity(p);
    for _ in 0..p {
        let mut path = vec![s];
        let mut v = s;
        while v == s || (v != t && Some(v) != target) {
            let a = left.iter_mut().find(|a| a.0 == v && a.2 > 0)?;
            a.2 -= 1;
            v = a.1;
            path.push(v);
        }
        paths.push(path);
    }
    paths.sort_by_key(|q| Some(*q.last().unwrap()) != target);
    Some(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_internal() {
        let d = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(exact_length_path(&d, 0, 2, 1), Some(vec![0, 1, 2]));
        assert_eq!(exact_length_path(&d, 0, 2, 2), None);
    }

    #[test]
    fn target_adjacent_to_source() {
        let d = Digraph::new(2, [(0, 1)]).unwrap();
        let paths = vertex_disjoint_paths_flow(&d, 0, 1, Some(1), 1, &[false; 2]);
        assert_eq!(paths, Some(vec![vec![0, 1]]));
    }
}
