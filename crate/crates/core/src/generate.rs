//! Random instances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{ColoredWeightedGraph, Digraph, LinkageQuery};

#[derive(Clone, Debug)]
pub struct GenParams {
    pub n: usize,
    /// Expected degree of the random part.
    pub avg_degree: f64,
    /// Number of distinct colors; `0` gives every vertex its own color.
    pub colors: usize,
    pub min_weight: u64,
    pub max_weight: u64,
    pub p: usize,
    pub k: usize,
    /// Plant `p` disjoint paths covering every vertex, with `k` distinct
    /// colors on them, so the query is feasible.
    pub planted: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 10,
            avg_degree: 3.0,
            colors: 0,
            min_weight: 1,
            max_weight: 1,
            p: 1,
            k: 3,
            planted: true,
        }
    }
}

/// G(n, d/(n-1)) edges.
pub fn random_edges<R: Rng + ?Sized>(n: usize, avg_degree: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let prob = if n > 1 {
        (avg_degree / (n - 1) as f64).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn random_graph<R: Rng + ?Sized>(
    n: usize,
    avg_degree: f64,
    colors: usize,
    weights: (u64, u64),
    rng: &mut R,
) -> ColoredWeightedGraph {
    let edges = random_edges(n, avg_degree, rng);
    let colors = random_colors(n, colors, rng);
    let weights = (0..n).map(|_| rng.gen_range(weights.0..=weights.1)).collect();
    ColoredWeightedGraph::new(n, edges, colors, weights).expect("generated graph is valid")
}

fn random_colors<R: Rng + ?Sized>(n: usize, colors: usize, rng: &mut R) -> Vec<u32> {
    if colors == 0 || colors >= n {
        return (1..=n as u32).collect();
    }
    (0..n).map(|_| rng.gen_range(1..=colors as u32)).collect()
}

/// A graph and a query, feasible when `params.planted` is set.
pub fn random_instance<R: Rng + ?Sized>(
    params: &GenParams,
    rng: &mut R,
) -> (ColoredWeightedGraph, LinkageQuery) {
    let n = params.n;
    let p = params.p.clamp(1, n.max(1));
    let mut edges = random_edges(n, params.avg_degree, rng);
    let mut colors = random_colors(n, params.colors, rng);
    let weights: Vec<u64> = (0..n)
        .map(|_| rng.gen_range(params.min_weight..=params.max_weight))
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let (sources, sinks, w, k);
    if params.planted {
        // Split the shuffled order into p consecutive runs.
        let mut runs: Vec<Vec<usize>> = vec![Vec::new(); p];
        for (i, &v) in order.iter().enumerate() {
            runs[i * p / n.max(1)].push(v);
        }
        for run in &runs {
            for pair in run.windows(2) {
                edges.push((pair[0], pair[1]));
            }
        }
        k = params.k.min(n);
        let palette = if params.colors == 0 || params.colors >= n {
            n
        } else {
            params.colors
        };
        let k = k.min(palette);
        let mut picks: Vec<usize> = order.clone();
        picks.shuffle(rng);
        picks.truncate(k);
        let mut fresh: Vec<u32> = (1..=palette as u32).collect();
        fresh.shuffle(rng);
        for (i, &v) in picks.iter().enumerate() {
            colors[v] = fresh[i];
        }
        w = picks.iter().map(|&v| weights[v]).sum();
        sources = runs.iter().map(|r| r[0]).collect::<Vec<_>>();
        sinks = runs.iter().map(|r| *r.last().unwrap()).collect::<Vec<_>>();
        let g = build(n, edges, colors, weights);
        return (g, LinkageQuery::new(sources, sinks, p, k, w));
    }
    k = params.k.min(n);
    sources = order[..p].to_vec();
    sinks = order[n - p..].to_vec();
    w = order[..k].iter().map(|&v| weights[v]).sum();
    let g = build(n, edges, colors, weights);
    (g, LinkageQuery::new(sources, sinks, p, k, w))
}

fn build(n: usize, mut edges: Vec<(usize, usize)>, colors: Vec<u32>, weights: Vec<u64>) -> ColoredWeightedGraph {
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    ColoredWeightedGraph::new(n, edges, colors, weights).expect("generated graph is valid")
}

/// Random digraph with arc probability `prob`.
pub fn random_digraph<R: Rng + ?Sized>(n: usize, prob: f64, rng: &mut R) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(prob) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::new(n, arcs).expect("generated digraph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::min_colored_linkage;
    use crate::rng::seeded;

    #[test]
    fn planted_instances_are_feasible() {
        let mut rng = seeded(3, 0);
        for _ in 0..20 {
            let params = GenParams {
                n: 7,
                avg_degree: 1.5,
                colors: 4,
                max_weight: 3,
                p: 2,
                k: 3,
                ..Default::default()
            };
            let (g, q) = random_instance(&params, &mut rng);
            assert!(q.check(g.n()).is_ok());
            assert!(min_colored_linkage(&g, &q).unwrap().is_some());
        }
    }
}
