use crate::graph::ColoredWeightedGraph;

/// A `k`-subset of `vertices` with pairwise distinct colors and total weight
/// exactly `w`, chosen by a dynamic program over color classes.
pub fn extract_certificate(
    graph: &ColoredWeightedGraph,
    vertices: &[usize],
    k: usize,
    w: u64,
) -> Option<Vec<usize>> {
    let mut vs: Vec<usize> = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    vs.retain(|&v| graph.weight(v) <= w);
    vs.sort_by_key(|&v| (graph.color(v), v));
    let mut classes: Vec<&[usize]> = Vec::new();
    let mut i = 0;
    while i < vs.len() {
        let c = graph.color(vs[i]);
        let j = vs[i..].iter().position(|&v| graph.color(v) != c).map_or(vs.len(), |d| i + d);
        classes.push(&vs[i..j]);
        i = j;
    }
    // reach[i][j]: sorted weights of j picks among the first i classes.
    let mut reach: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); k + 1]; classes.len() + 1];
    reach[0][0].push(0);
    for (ci, class) in classes.iter().enumerate() {
        for j in 0..=k {
            let mut next = reach[ci][j].clone();
            if j > 0 {
                for &x in &reach[ci][j - 1] {
                    for &v in class.iter() {
                        let y = x + graph.weight(v);
                        if y <= w {
                            next.push(y);
                        }
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            reach[ci + 1][j] = next;
        }
    }
    if reach[classes.len()][k].binary_search(&w).is_err() {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let (mut j, mut left) = (k, w);
    for ci in (0..classes.len()).rev() {
        if reach[ci][j].binary_search(&left).is_ok() {
            continue;
        }
        let v = classes[ci]
            .iter()
            .copied()
            .find(|&v| {
                let we = graph.weight(v);
                j > 0 && we <= left && reach[ci][j - 1].binary_search(&(left - we)).is_ok()
            })
            .expect("reachable state has a predecessor");
        out.push(v);
        j -= 1;
        left -= graph.weight(v);
    }
    out.sort_unstable();
    Some(out)
}
