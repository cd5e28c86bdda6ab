//! Reduction to `|S| = |T| = p` with `S` and `T` disjoint.
//!
//! `p` source twins adjacent to all of `S` and `p` sink twins adjacent to all
//! of `T` are added, sharing one fresh color and a weight heavy enough that
//! any certificate of the new instance contains exactly one of them.

use super::{ColoredWeightedGraph, LinkageQuery, LinkageSolution};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct NormalizedQuery {
    pub graph: ColoredWeightedGraph,
    pub query: LinkageQuery,
    /// Vertex count of the original graph; ids below it are shared.
    pub original_n: usize,
    /// Zero when the query was already normal and no twins were added.
    pub twin_weight: u64,
}

impl NormalizedQuery {
    pub fn p(&self) -> usize {
        self.query.p
    }

    pub fn source_twins(&self) -> &[usize] {
        &self.query.sources
    }

    pub fn sink_twins(&self) -> &[usize] {
        &self.query.sinks
    }

    /// Wraps a query that already has `|S| = |T| = p` with `S` and `T`
    /// disjoint; nothing is added.
    pub fn identity(graph: &ColoredWeightedGraph, query: &LinkageQuery) -> Option<Self> {
        let normal = query.sources.len() == query.p
            && query.sinks.len() == query.p
            && query.sources.iter().all(|s| !query.sinks.contains(s));
        normal.then(|| NormalizedQuery {
            graph: graph.clone(),
            query: query.clone(),
            original_n: graph.n(),
            twin_weight: 0,
        })
    }

    pub fn has_twins(&self) -> bool {
        self.twin_weight != 0
    }

    /// Length difference between a normalized solution and its original.
    pub fn offset(&self) -> usize {
        if self.has_twins() {
            2 * self.query.p
        } else {
            0
        }
    }

    pub fn is_twin(&self, v: usize) -> bool {
        v >= self.original_n
    }

    /// Endpoints of the normalized query.
    pub fn is_terminal(&self, v: usize) -> bool {
        self.query.sources.contains(&v) || self.query.sinks.contains(&v)
    }

    /// Strips the twins from a solution of the normalized instance.
    pub fn back_map(&self, solution: &LinkageSolution) -> LinkageSolution {
        let paths = solution
            .paths
            .iter()
            .map(|p| p.iter().copied().filter(|&v| !self.is_twin(v)).collect())
            .collect();
        let certificate = solution
            .certificate
            .iter()
            .copied()
            .filter(|&v| !self.is_twin(v))
            .collect();
        LinkageSolution::new(paths, certificate)
    }

    /// Maps a solution of the original instance into the normalized one.
    pub fn lift(&self, solution: &LinkageSolution) -> LinkageSolution {
        if !self.has_twins() {
            return solution.clone();
        }
        let paths: Vec<Vec<usize>> = solution
            .paths
            .iter()
            .zip(self.query.sources.iter().zip(&self.query.sinks))
            .map(|(path, (&s, &t))| {
                let mut out = Vec::with_capacity(path.len() + 2);
                out.push(s);
                out.extend_from_slice(path);
                out.push(t);
                out
            })
            .collect();
        let mut certificate = solution.certificate.clone();
        certificate.push(self.query.sources[0]);
        LinkageSolution::new(paths, certificate)
    }
}

pub fn normalize(graph: &ColoredWeightedGraph, query: &LinkageQuery) -> Result<NormalizedQuery> {
    query.check(graph.n())?;
    let n = graph.n();
    let p = query.p;
    let k = query.k as u64;
    // Vertices heavier than w can never be in a certificate; they get a weight
    // above the new target so the twin weight only has to dominate the rest.
    let labelable_max = graph
        .weights()
        .iter()
        .copied()
        .filter(|&x| x <= query.w)
        .max()
        .unwrap_or(0);
    let twin_weight = k * labelable_max + 1;
    let new_w = query.w + twin_weight;
    let mut weights: Vec<u64> = graph
        .weights()
        .iter()
        .map(|&x| if x <= query.w { x } else { new_w + 1 })
        .collect();
    let mut colors = graph.colors().to_vec();
    let twin_color = n as u32 + 1;
    let mut edges: Vec<(usize, usize)> = graph.edges().to_vec();
    let sources: Vec<usize> = (n..n + p).collect();
    let sinks: Vec<usize> = (n + p..n + 2 * p).collect();
    for &s in &sources {
        edges.extend(query.sources.iter().map(|&v| (s, v)));
    }
    for &t in &sinks {
        edges.extend(query.sinks.iter().map(|&v| (t, v)));
    }
    colors.extend(std::iter::repeat(twin_color).take(2 * p));
    weights.extend(std::iter::repeat(twin_weight).take(2 * p));
    let g = ColoredWeightedGraph::new(n + 2 * p, edges, colors, weights)?;
    Ok(NormalizedQuery {
        graph: g,
        query: LinkageQuery::new(sources, sinks, p, query.k + 1, new_w),
        original_n: n,
        twin_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_solution;

    #[test]
    fn single_vertex_terminal() {
        let g = ColoredWeightedGraph::new(1, [], vec![1], vec![4]).unwrap();
        let q = LinkageQuery::new(vec![0], vec![0], 1, 1, 4);
        let nq = normalize(&g, &q).unwrap();
        assert_eq!(nq.graph.n(), 3);
        assert_eq!(nq.graph.neighbors(1), &[0]);
        assert_eq!(nq.graph.neighbors(2), &[0]);
        assert_eq!(nq.query.k, 2);
        assert_eq!(nq.query.w, 4 + 4 + 1);
        let sol = LinkageSolution::new(vec![vec![0]], vec![0]);
        assert!(validate_solution(&g, &q, &sol).is_ok());
        let lifted = nq.lift(&sol);
        assert_eq!(lifted.paths, vec![vec![1, 0, 2]]);
        assert!(validate_solution(&nq.graph, &nq.query, &lifted).is_ok());
        assert_eq!(nq.back_map(&lifted), sol);
    }

    #[test]
    fn overweight_vertices_become_unusable() {
        let g = ColoredWeightedGraph::new(2, [(0, 1)], vec![1, 2], vec![1, 50]).unwrap();
        let q = LinkageQuery::new(vec![0], vec![1], 1, 1, 1);
        let nq = normalize(&g, &q).unwrap();
        assert_eq!(nq.twin_weight, 2);
        assert!(nq.graph.weight(1) > nq.query.w);
    }
}
