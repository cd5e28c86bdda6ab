//! Graphs, queries and solutions.

mod io;
mod normalize;
mod validate;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{
    canonicalize, load_instance, save_instance, Instance, LinearMatroidDoc, RationalDoc,
    TransversalDoc,
};
pub use normalize::{normalize, NormalizedQuery};
pub use validate::{validate_solution, validate_solution_with, Violation, ViolationKind};

/// Undirected simple graph with a color in `1..=n` and a weight `>= 1` on
/// every vertex. Vertices are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredWeightedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    colors: Vec<u32>,
    weights: Vec<u64>,
}

impl ColoredWeightedGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        colors: Vec<u32>,
        weights: Vec<u64>,
    ) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::invalid(format!(
                "colors: expected {n} entries, found {}",
                colors.len()
            )));
        }
        if weights.len() != n {
            return Err(Error::invalid(format!(
                "weights: expected {n} entries, found {}",
                weights.len()
            )));
        }
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 || c as usize > n {
                return Err(Error::invalid(format!(
                    "colors[{v}]: color {c} outside [1, {n}]"
                )));
            }
        }
        for (v, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(Error::invalid(format!("weights[{v}]: weight must be >= 1")));
            }
        }
        let mut list = Vec::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edges[{i}]: endpoint out of range 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("edges[{i}]: self-loop at {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "edges: parallel edge {}-{}",
                w[0].0, w[0].1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(ColoredWeightedGraph {
            n,
            edges: list,
            adj,
            colors,
            weights,
        })
    }

    /// Every vertex its own color (`v + 1`) and weight one.
    pub fn bijective(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, edges, (1..=n as u32).collect(), vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `uv` in [`edges`](Self::edges).
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn with_colors(&self, colors: Vec<u32>) -> Result<Self> {
        Self::new(self.n, self.edges.iter().copied(), colors, self.weights.clone())
    }

    pub fn with_weights(&self, weights: Vec<u64>) -> Result<Self> {
        Self::new(self.n, self.edges.iter().copied(), self.colors.clone(), weights)
    }

    /// Same vertex ids with every edge at a removed vertex dropped.
    pub fn without_vertices(&self, removed: &[bool]) -> Self {
        self.filter_edges(|_, u, v| !removed[u] && !removed[v])
    }

    /// Same vertex ids with the flagged edges (by edge index) dropped.
    pub fn without_edges(&self, removed: &[bool]) -> Self {
        self.filter_edges(|i, _, _| !removed[i])
    }

    fn filter_edges(&self, keep: impl Fn(usize, usize, usize) -> bool) -> Self {
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, &(u, v))| keep(i, u, v))
            .map(|(_, &e)| e)
            .collect();
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        ColoredWeightedGraph {
            n: self.n,
            edges,
            adj,
            colors: self.colors.clone(),
            weights: self.weights.clone(),
        }
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given
    /// order. Colors are compressed to stay within range.
    pub fn induced(&self, keep: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let mut palette: Vec<u32> = keep.iter().map(|&v| self.colors[v]).collect();
        palette.sort_unstable();
        palette.dedup();
        let colors = keep
            .iter()
            .map(|&v| palette.binary_search(&self.colors[v]).unwrap() as u32 + 1)
            .collect();
        let weights = keep.iter().map(|&v| self.weights[v]).collect();
        Ok((Self::new(keep.len(), edges, colors, weights)?, keep.to_vec()))
    }

    /// Edge-count distances from the nearest of `sources`.
    pub fn bfs_distances(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Directed simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (i, (u, v)) in arcs.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "arcs[{i}]: endpoint out of range 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("arcs[{i}]: self-loop at {u}")));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "arcs: parallel arc {}->{}",
                w[0].0, w[0].1
            )));
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &list {
            out[u].push(v);
            inc[v].push(u);
        }
        for a in inc.iter_mut() {
            a.sort_unstable();
        }
        Ok(Digraph {
            n,
            arcs: list,
            out,
            inc,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }
}

/// The (S, T, p, k, w) problem statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageQuery {
    #[serde(rename = "S")]
    pub sources: Vec<usize>,
    #[serde(rename = "T")]
    pub sinks: Vec<usize>,
    pub p: usize,
    pub k: usize,
    pub w: u64,
}

impl LinkageQuery {
    pub fn new(sources: Vec<usize>, sinks: Vec<usize>, p: usize, k: usize, w: u64) -> Self {
        let mut q = LinkageQuery {
            sources,
            sinks,
            p,
            k,
            w,
        };
        q.sources.sort_unstable();
        q.sources.dedup();
        q.sinks.sort_unstable();
        q.sinks.dedup();
        q
    }

    /// Checks the query against a vertex count.
    pub fn check(&self, n: usize) -> Result<()> {
        if self.sources.is_empty() {
            return Err(Error::invalid("query.S: must be nonempty"));
        }
        if self.sinks.is_empty() {
            return Err(Error::invalid("query.T: must be nonempty"));
        }
        for (name, set) in [("S", &self.sources), ("T", &self.sinks)] {
            for (i, &v) in set.iter().enumerate() {
                if v >= n {
                    return Err(Error::invalid(format!(
                        "query.{name}[{i}]: vertex {v} out of range 0..{n}"
                    )));
                }
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("query.{name}: repeated vertex")));
            }
        }
        if self.p == 0 {
            return Err(Error::invalid("query.p: must be >= 1"));
        }
        if self.w < self.k as u64 {
            return Err(Error::invalid(format!(
                "query.w: {} is below k = {} (weights are >= 1)",
                self.w, self.k
            )));
        }
        Ok(())
    }
}

/// A certified answer: `p` vertex-disjoint paths and a witness set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkageSolution {
    pub paths: Vec<Vec<usize>>,
    pub certificate: Vec<usize>,
    pub total_length: usize,
}

impl LinkageSolution {
    pub fn new(paths: Vec<Vec<usize>>, mut certificate: Vec<usize>) -> Self {
        certificate.sort_unstable();
        let total_length = paths.iter().map(Vec::len).sum();
        LinkageSolution {
            paths,
            certificate,
            total_length,
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.paths.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_graphs() {
        assert!(ColoredWeightedGraph::bijective(3, [(0, 0)]).is_err());
        assert!(ColoredWeightedGraph::bijective(3, [(0, 1), (1, 0)]).is_err());
        assert!(ColoredWeightedGraph::bijective(3, [(0, 3)]).is_err());
        let err = ColoredWeightedGraph::new(2, [(0, 1)], vec![1, 1], vec![1, 0]).unwrap_err();
        assert!(err.to_string().contains("weights[1]"), "{err}");
        let err = ColoredWeightedGraph::new(2, [(0, 1)], vec![3, 1], vec![1, 1]).unwrap_err();
        assert!(err.to_string().contains("colors[0]"), "{err}");
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn adjacency_and_removal() {
        let g = ColoredWeightedGraph::bijective(4, [(2, 1), (0, 1), (2, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.neighbors(2), &[1, 3]);
        assert_eq!(g.edge_index(2, 1), Some(1));
        let h = g.without_vertices(&[false, false, true, false]);
        assert_eq!(h.edges(), &[(0, 1)]);
        assert_eq!(h.n(), 4);
        let e = g.without_edges(&[true, false, false]);
        assert_eq!(e.edges(), &[(1, 2), (2, 3)]);
        assert_eq!(
            g.bfs_distances(&[0]),
            vec![Some(0), Some(1), Some(2), Some(3)]
        );
    }

    #[test]
    fn query_checks() {
        let q = LinkageQuery::new(vec![0], vec![1], 1, 2, 1);
        assert!(q.check(2).unwrap_err().to_string().contains("query.w"));
        let q = LinkageQuery::new(vec![0], vec![5], 1, 0, 0);
        assert!(q.check(2).is_err());
        assert!(LinkageQuery::new(vec![0], vec![1], 1, 0, 0).check(2).is_ok());
    }
}
