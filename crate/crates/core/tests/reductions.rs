use colorlink::generate::random_edges;
use colorlink::graph::LinkageQuery;
use colorlink::oracle::apps::{
    min_covering_flower, min_k_colored_at_least, min_profit_flower, min_weighted_colored,
    shortest_cycle_through, shortest_path_at_least,
};
use colorlink::reductions::*;
use colorlink::rng::seeded;
use colorlink::{ColoredWeightedGraph, SolverConfig};
use rand::seq::SliceRandom;
use rand::Rng;

fn cfg(seed: u64) -> SolverConfig {
    SolverConfig::with_seed(seed)
}

fn graph(n: usize, edges: &[(usize, usize)]) -> ColoredWeightedGraph {
    ColoredWeightedGraph::bijective(n, edges.iter().copied()).unwrap()
}

fn cycle_graph(n: usize) -> ColoredWeightedGraph {
    ColoredWeightedGraph::bijective(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

#[test]
fn longest_path_examples() {
    let e = graph(2, &[(0, 1)]);
    assert_eq!(longest_st_path(&e, 0, 1, 2, &cfg(1)).unwrap().unwrap().answer, vec![0, 1]);
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(longest_st_path(&tri, 0, 2, 3, &cfg(2)).unwrap().unwrap().answer, vec![0, 1, 2]);
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert!(longest_st_path(&k4, 0, 1, 5, &cfg(3)).unwrap().is_none());
}

#[test]
fn longest_cycle_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(longest_cycle(&tri, 3, &cfg(1)).unwrap().unwrap().length, 3);
    let mut c5: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    c5.push((0, 2));
    let g = graph(5, &c5);
    let r = longest_cycle(&g, 5, &cfg(2)).unwrap().unwrap();
    assert_eq!(r.length, 5);
    assert_eq!(shortest_cycle_through(&g, &[], 5).unwrap(), Some(5));
    let tree = graph(4, &[(0, 1), (1, 2), (1, 3)]);
    assert!(longest_cycle(&tree, 3, &cfg(3)).unwrap().is_none());
}

#[test]
fn t_cycle_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let r = t_cycle(&tri, &[0, 1, 2], &cfg(1)).unwrap().unwrap();
    assert_eq!(r.length, 3);
    assert_eq!(r.trace.offset, 1);
    let r = t_cycle(&cycle_graph(6), &[0, 3], &cfg(2)).unwrap().unwrap();
    assert_eq!(r.length, 6);
    // Two triangles sharing vertex 0.
    let bowtie = graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
    assert!(t_cycle(&bowtie, &[1, 3], &cfg(3)).unwrap().is_none());
    assert!(t_cycle(&bowtie, &[1, 2, 4], &cfg(3)).unwrap().is_none());
}

#[test]
fn longest_t_cycle_examples() {
    let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(
        longest_t_cycle(&tri, &[0, 1, 2], 3, &cfg(1)).unwrap().unwrap().answer,
        t_cycle(&tri, &[0, 1, 2], &cfg(1)).unwrap().unwrap().answer
    );
    let r = longest_t_cycle(&cycle_graph(6), &[2], 5, &cfg(2)).unwrap().unwrap();
    assert_eq!(r.length, 6);
    // Theta graph: 0-1-4 (short), 0-2-3-4 (long), edge 0-4.
    let theta = graph(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4), (0, 4)]);
    let r = longest_t_cycle(&theta, &[1], 5, &cfg(3)).unwrap().unwrap();
    assert_eq!(r.length, 5);
    assert_eq!(shortest_cycle_through(&theta, &[1], 5).unwrap(), Some(5));
    assert!(longest_t_cycle(&theta, &[1], 6, &cfg(4)).unwrap().is_none());
}

#[test]
fn flower_examples() {
    let bowtie = graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
    let r = vrp_flower(&bowtie, 0, &[1, 3], 2, &cfg(1)).unwrap().unwrap();
    assert_eq!(r.length, 6);
    assert_eq!(r.answer.petals.len(), 2);
    let one = vrp_flower(&cycle_graph(5), 0, &[2], 1, &cfg(2)).unwrap().unwrap();
    assert_eq!(one.length, 5);
    assert!(vrp_flower(&bowtie, 0, &[1], 3, &cfg(3)).unwrap().is_none());
}

#[test]
fn profit_examples() {
    let weights = vec![1, 4, 2, 3, 1];
    let g = graph(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).with_weights(weights).unwrap();
    let r = vrp_profits(&g, 0, 1, 1, 4, &cfg(1)).unwrap().unwrap();
    assert_eq!(r.length, 3);
    assert!(r.answer.petals[0].contains(&1));
    assert!(vrp_profits(&g, 0, 2, 4, 100, &cfg(2)).unwrap().is_none());
    // Profits 2 and 3 lie on different triangles.
    let r = vrp_profits(&g, 0, 2, 2, 5, &cfg(3)).unwrap().unwrap();
    assert_eq!(Some(r.length), min_profit_flower(&g, 0, 2, 2, 5).unwrap());
}

#[test]
fn k_colored_length_floor() {
    let g = ColoredWeightedGraph::new(3, [(0, 1), (1, 2)], vec![1, 2, 3], vec![1; 3]).unwrap();
    let r = longest_k_colored_linkage(&g, &[0], &[2], 1, 2, 3, &cfg(1)).unwrap().unwrap();
    assert_eq!(r.answer.paths, vec![vec![0, 1, 2]]);
    // A 6-vertex instance whose only colorful linkages are short.
    let g = ColoredWeightedGraph::new(
        6,
        [(0, 1), (1, 5), (0, 2), (2, 3), (3, 4), (4, 5)],
        vec![1, 2, 1, 1, 1, 1],
        vec![1; 6],
    )
    .unwrap();
    assert_eq!(min_k_colored_at_least(&g, &[0], &[5], 1, 2, 5).unwrap(), None);
    assert!(longest_k_colored_linkage(&g, &[0], &[5], 1, 2, 5, &cfg(2)).unwrap().is_none());
    let plain = longest_k_colored_linkage(&g, &[0], &[5], 1, 2, 1, &cfg(3)).unwrap().unwrap();
    assert_eq!(plain.trace.offset, 0);
    assert_eq!(plain.length, 3);
}

#[test]
fn subdivision_counts() {
    let g = graph(3, &[(0, 1), (1, 2)]);
    assert_eq!(subdivide_for_edge_weights(&g, &[1, 1], 100).unwrap().n(), 5);
    assert_eq!(subdivide_for_edge_weights(&g, &[3, 1], 100).unwrap().n(), 3 + 5 + 1);
    assert!(subdivide_for_edge_weights(&g, &[0, 1], 100).is_err());
    assert!(subdivide_for_edge_weights(&g, &[101, 1], 100).is_err());
}

#[test]
fn weighted_colored_path() {
    // Edge weights follow the sorted edge list: 0-1, 0-2, 1-3, 2-3.
    let g = ColoredWeightedGraph::new(4, [(0, 1), (1, 3), (0, 2), (2, 3)], vec![1, 2, 3, 4], vec![1; 4]).unwrap();
    let ew = [5, 1, 5, 2];
    let q = LinkageQuery::new(vec![0], vec![3], 1, 3, 3);
    let want = min_weighted_colored(&g, &ew, &q).unwrap();
    let got = weighted_colored_linkage(&g, &ew, &q, &cfg(1)).unwrap().map(|r| r.length as u64);
    assert_eq!(got, want);
    assert_eq!(want, Some(3));
}

fn random_graph(rng: &mut impl Rng, n: usize) -> ColoredWeightedGraph {
    let deg = rng.gen_range(2.0..4.0);
    graph(n, &random_edges(n, deg, rng))
}

#[test]
fn random_reductions_match_brute_force() {
    let mut rng = seeded(99, 0);
    for i in 0..12u64 {
        let n = rng.gen_range(4..=7);
        let g = random_graph(&mut rng, n);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let t_size = rng.gen_range(1..=3);
        let ts = &vs[..t_size];
        let want = shortest_cycle_through(&g, ts, 3).unwrap();
        assert_eq!(t_cycle(&g, ts, &cfg(i)).unwrap().map(|r| r.length), want, "t-cycle {i}");
        let k = rng.gen_range(3..=n);
        let want = shortest_cycle_through(&g, ts, k).unwrap();
        assert_eq!(longest_t_cycle(&g, ts, k, &cfg(i)).unwrap().map(|r| r.length), want, "longest t-cycle {i}");
        let depot = vs[n - 1];
        let p = rng.gen_range(1..=2);
        let want = min_covering_flower(&g, depot, ts, p).unwrap();
        assert_eq!(vrp_flower(&g, depot, ts, p, &cfg(i)).unwrap().map(|r| r.length), want, "flower {i}");
        let (s, t) = (vs[0], vs[1]);
        let want = shortest_path_at_least(&g, s, t, k).unwrap();
        assert_eq!(longest_st_path(&g, s, t, k, &cfg(i)).unwrap().map(|r| r.length), want, "path {i}");
    }
}
