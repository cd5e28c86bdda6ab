//! Point evaluation of the walk polynomial `f(F_l)`.
//!
//! `F_l` is the family of bijective, semiproper, ordered labeled walkages of
//! total length `l` that start at `ordv(S)`, end on `T` and collect weight
//! exactly `w`. Two evaluators are provided:
//!
//! * [`layered`] runs the dynamic program over states
//!   `D(t, l, L, T', w', x, y, o)` with label subsets `L`, one length layer at
//!   a time.
//! * [`sieve`] replaces the label subset by a label count and sums over all
//!   label pools `Y` by inclusion-exclusion, which in characteristic two needs
//!   no signs. Memory no longer grows with `2^k`.
//!
//! Both return the same field element for the same assignment.

pub mod layered;
pub mod sieve;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::BinaryField;
use crate::graph::ColoredWeightedGraph;

/// Values for the variables `f_e`, `f_v` and `f_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableAssignment {
    /// Indexed like [`ColoredWeightedGraph::edges`].
    pub edge: Vec<u32>,
    pub vertex: Vec<u32>,
    /// `(color - 1) * k + (label - 1)`.
    pub color_label: Vec<u32>,
    k: usize,
}

impl VariableAssignment {
    pub fn new(edge: Vec<u32>, vertex: Vec<u32>, color_label: Vec<u32>, k: usize) -> Self {
        VariableAssignment {
            edge,
            vertex,
            color_label,
            k,
        }
    }

    /// Uniform values: edges first, then vertices, then (color, label) pairs.
    pub fn random<R: Rng + ?Sized>(
        graph: &ColoredWeightedGraph,
        k: usize,
        field: &BinaryField,
        rng: &mut R,
    ) -> Self {
        let n = graph.n();
        let edge = (0..graph.edges().len()).map(|_| field.sample(rng)).collect();
        let vertex = (0..n).map(|_| field.sample(rng)).collect();
        let color_label = (0..n * k).map(|_| field.sample(rng)).collect();
        VariableAssignment {
            edge,
            vertex,
            color_label,
            k,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `f_c(color, label)` for `color` in `1..=n` and `label` in `1..=k`.
    pub fn fc(&self, color: u32, label: usize) -> u32 {
        self.color_label[(color as usize - 1) * self.k + label - 1]
    }

    pub fn variable_count(&self) -> usize {
        self.edge.len() + self.vertex.len() + self.color_label.len()
    }
}

/// A normalized instance: `|S| = |T| = p`, `S` and `T` disjoint.
#[derive(Clone, Copy, Debug)]
pub struct WalkProblem<'a> {
    pub graph: &'a ColoredWeightedGraph,
    /// `ordv(S)`: sorted ascending.
    pub sources: &'a [usize],
    pub sinks: &'a [usize],
    pub k: usize,
    pub w: u64,
}

impl WalkProblem<'_> {
    pub fn p(&self) -> usize {
        self.sources.len()
    }

    fn check(&self, assign: &VariableAssignment, max_w: u64) -> Result<()> {
        let p = self.sources.len();
        if p == 0 || self.sinks.len() != p {
            return Err(Error::Contract(format!(
                "normalized instance needs |S| = |T| = p >= 1, got {} and {}",
                p,
                self.sinks.len()
            )));
        }
        if p > 16 {
            return Err(Error::Contract(format!("p = {p} exceeds 16")));
        }
        if self.k > 30 {
            return Err(Error::Contract(format!("k = {} exceeds 30", self.k)));
        }
        if self.sources.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract("S must be sorted and distinct".into()));
        }
        if self.sources.iter().any(|s| self.sinks.contains(s)) {
            return Err(Error::Contract("S and T must be disjoint".into()));
        }
        if self.w > max_w {
            return Err(Error::WeightCap {
                w: self.w,
                cap: max_w,
            });
        }
        let g = self.graph;
        if assign.edge.len() != g.edges().len()
            || assign.vertex.len() != g.n()
            || assign.color_label.len() != g.n() * self.k
            || assign.k != self.k
        {
            return Err(Error::Contract(
                "assignment does not match the graph and k".into(),
            ));
        }
        Ok(())
    }
}

/// Which dynamic program to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Evaluator {
    Layered,
    Sieve,
    /// Layered when its tables fit the memory budget, else sieve.
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub evaluator: Evaluator,
    pub max_w: u64,
    /// Bytes of DP tables the layered evaluator may hold.
    pub memory_budget: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            evaluator: Evaluator::Auto,
            max_w: 1_000_000,
            memory_budget: 256 << 20,
        }
    }
}

/// Number of variables in each monomial of `f(F_l)`.
pub fn polynomial_degree(l: usize, p: usize, k: usize) -> usize {
    assert!(l >= p, "length below the number of walks");
    l - p + 2 * k
}

/// `f(F_l)` at `assign`.
pub fn evaluate(
    field: &BinaryField,
    problem: &WalkProblem<'_>,
    l: usize,
    assign: &VariableAssignment,
    opts: &EvalOptions,
) -> Result<u32> {
    if l < problem.p() || l > problem.graph.n() {
        return Err(Error::Contract(format!(
            "length {l} outside [p, n] = [{}, {}]",
            problem.p(),
            problem.graph.n()
        )));
    }
    Ok(evaluate_upto(field, problem, l, assign, opts)?[l])
}

/// `f(F_l)` for every `l` in `0..=max_len` from one pass.
pub fn evaluate_upto(
    field: &BinaryField,
    problem: &WalkProblem<'_>,
    max_len: usize,
    assign: &VariableAssignment,
    opts: &EvalOptions,
) -> Result<Vec<u32>> {
    problem.check(assign, opts.max_w)?;
    let prep = Prep::new(field, problem, assign, max_len);
    let use_layered = match opts.evaluator {
        Evaluator::Layered => true,
        Evaluator::Sieve => false,
        Evaluator::Auto => layered::estimated_bytes(&prep) <= opts.memory_budget,
    };
    Ok(if use_layered {
        layered::run(&prep)
    } else {
        sieve::run(&prep)
    })
}

/// Directed edge slots: dart `d` goes from `tail` to `head[d]` where
/// `off[tail] <= d < off[tail + 1]`.
pub(crate) struct Darts {
    pub off: Vec<usize>,
    pub head: Vec<usize>,
    pub rev: Vec<usize>,
    pub fe: Vec<u32>,
}

impl Darts {
    fn new(graph: &ColoredWeightedGraph, assign: &VariableAssignment) -> Self {
        let n = graph.n();
        let mut off = vec![0; n + 1];
        for v in 0..n {
            off[v + 1] = off[v] + graph.degree(v);
        }
        let mut head = Vec::with_capacity(off[n]);
        let mut fe = Vec::with_capacity(off[n]);
        for v in 0..n {
            for &u in graph.neighbors(v) {
                head.push(u);
                fe.push(assign.edge[graph.edge_index(v, u).unwrap()]);
            }
        }
        let mut rev = vec![0; off[n]];
        for v in 0..n {
            for d in off[v]..off[v + 1] {
                let u = head[d];
                let pos = graph.neighbors(u).binary_search(&v).unwrap();
                rev[d] = off[u] + pos;
            }
        }
        Darts { off, head, rev, fe }
    }

    pub fn len(&self) -> usize {
        self.head.len()
    }

    /// Dart from `x` to `y`, if `xy` is an edge.
    pub fn find(&self, x: usize, y: usize) -> Option<usize> {
        let range = self.off[x]..self.off[x + 1];
        self.head[range.clone()]
            .binary_search(&y)
            .ok()
            .map(|i| range.start + i)
    }
}

/// Shared precomputation for both evaluators.
pub(crate) struct Prep<'a> {
    pub f: &'a BinaryField,
    pub n: usize,
    pub p: usize,
    pub k: usize,
    pub w: u64,
    pub max_len: usize,
    pub darts: Darts,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub colors: Vec<u32>,
    pub weights: Vec<u64>,
    pub fv: Vec<u32>,
    pub assign: &'a VariableAssignment,
    /// `into_source[t][x]`: dart from `x` to `s_t`, or `usize::MAX`.
    pub into_source: Vec<Vec<usize>>,
    /// `valid[j]`: weights `w'` that `j` labels can reach with `w - w'`
    /// still reachable by the other `k - j`.
    pub valid: Vec<Vec<u64>>,
}

impl<'a> Prep<'a> {
    fn new(
        f: &'a BinaryField,
        problem: &WalkProblem<'_>,
        assign: &'a VariableAssignment,
        max_len: usize,
    ) -> Self {
        let g = problem.graph;
        let n = g.n();
        let darts = Darts::new(g, assign);
        let into_source = problem
            .sources
            .iter()
            .map(|&s| {
                (0..n)
                    .map(|x| darts.find(x, s).unwrap_or(usize::MAX))
                    .collect()
            })
            .collect();
        let valid = valid_weights(g.weights(), problem.k, problem.w);
        Prep {
            f,
            n,
            p: problem.sources.len(),
            k: problem.k,
            w: problem.w,
            max_len,
            darts,
            sources: problem.sources.to_vec(),
            sinks: problem.sinks.to_vec(),
            colors: g.colors().to_vec(),
            weights: g.weights().to_vec(),
            fv: assign.vertex.clone(),
            assign,
            into_source,
            valid,
        }
    }

    /// Label counts `j` a state at layer `l` may carry and still finish by
    /// `max_len`.
    pub fn label_window(&self, l: usize) -> std::ops::RangeInclusive<usize> {
        let lo = self.k.saturating_sub(self.max_len.saturating_sub(l));
        let hi = self.k.min(l);
        lo..=hi
    }

    /// Whether `t` walks at total length `l` leave room for the rest.
    pub fn walks_fit(&self, t: usize, l: usize) -> bool {
        l >= 2 * t && l + 2 * (self.p - t) <= self.max_len
    }
}

/// For each label count `j`, the weights reachable as a sum of `j` vertex
/// weights (with repetition) whose complement to `w` is reachable by `k - j`.
fn valid_weights(weights: &[u64], k: usize, w: u64) -> Vec<Vec<u64>> {
    let size = w as usize + 1;
    let mut distinct: Vec<u64> = weights.iter().copied().filter(|&x| x <= w).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let mut reach = vec![vec![false; size]; k + 1];
    reach[0][0] = true;
    for j in 1..=k {
        let (before, after) = reach.split_at_mut(j);
        let prev = &before[j - 1];
        let cur = &mut after[0];
        for (x, &ok) in prev.iter().enumerate() {
            if ok {
                for &d in &distinct {
                    let y = x + d as usize;
                    if y < size {
                        cur[y] = true;
                    }
                }
            }
        }
    }
    (0..=k)
        .map(|j| {
            (0..size)
                .filter(|&x| reach[j][x] && reach[k - j][size - 1 - x])
                .map(|x| x as u64)
                .collect()
        })
        .collect()
}

/// Combination masks of `k` bits grouped by popcount.
pub(crate) fn masks_by_popcount(bits: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new(); bits + 1];
    for m in 0..(1u32 << bits) {
        out[m.count_ones() as usize].push(m);
    }
    out
}

/// A block of the DP for one `(t, T', labels, w')`: per-vertex sums
/// `a[x] = sum_y D(.., x, y, 0) + D(.., x, y, 1)` and per-dart `D(.., x, y, 1)`.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub a: Vec<u32>,
    pub d1: Vec<u32>,
}

impl Block {
    pub fn zeroed(n: usize, darts: usize) -> Self {
        Block {
            a: vec![0; n],
            d1: vec![0; darts],
        }
    }

    pub fn clear(&mut self) {
        self.a.iter_mut().for_each(|v| *v = 0);
        self.d1.iter_mut().for_each(|v| *v = 0);
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0) && self.d1.iter().all(|&v| v == 0)
    }
}

/// `out[x] += sum_{y in N(x)} f_e(xy) * B(x, y)` where `B` reads `prev`
/// with the digon exclusion for labeled `y`.
#[inline]
pub(crate) fn gather_unlabeled(f: &BinaryField, darts: &Darts, prev: &Block, out: &mut [u32]) {
    for (x, slot) in out.iter_mut().enumerate() {
        let mut acc = 0u32;
        for d in darts.off[x]..darts.off[x + 1] {
            let y = darts.head[d];
            let b = prev.a[y] ^ prev.d1[darts.rev[d]];
            acc ^= f.mul(darts.fe[d], b);
        }
        *slot ^= acc;
    }
}

/// `out[d] += c * B(x, y)` for every dart `d = (x, y)` out of `x`.
#[inline]
pub(crate) fn gather_labeled(
    f: &BinaryField,
    darts: &Darts,
    x: usize,
    c: u32,
    prev: &Block,
    out: &mut [u32],
) {
    let range = darts.off[x]..darts.off[x + 1];
    if c == 1 {
        for d in range {
            out[d] ^= prev.a[darts.head[d]] ^ prev.d1[darts.rev[d]];
        }
    } else {
        for d in range {
            out[d] ^= f.mul(c, prev.a[darts.head[d]] ^ prev.d1[darts.rev[d]]);
        }
    }
}

/// Multiplies each dart of `d1` by `coef[d]` and adds the per-vertex sums
/// into `a`.
#[inline]
pub(crate) fn finish_block(f: &BinaryField, darts: &Darts, coef: &[u32], block: &mut Block) {
    for x in 0..block.a.len() {
        let mut acc = 0u32;
        for d in darts.off[x]..darts.off[x + 1] {
            let v = f.mul(coef[d], block.d1[d]);
            block.d1[d] = v;
            acc ^= v;
        }
        block.a[x] ^= acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_formula() {
        assert_eq!(polynomial_degree(1, 1, 0), 0);
        assert_eq!(polynomial_degree(5, 1, 2), 8);
        assert_eq!(polynomial_degree(7, 2, 3), 11);
    }

    #[test]
    fn valid_weight_windows() {
        // weights {1, 3}, k = 2, w = 4: pairs (1,3) only.
        let v = valid_weights(&[1, 3, 3], 2, 4);
        assert_eq!(v[0], vec![0]);
        assert_eq!(v[1], vec![1, 3]);
        assert_eq!(v[2], vec![4]);
        let none = valid_weights(&[2], 2, 3);
        assert!(none[2].is_empty());
    }

    #[test]
    fn darts_are_consistent() {
        let g = ColoredWeightedGraph::bijective(4, [(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let field = BinaryField::new(5).unwrap();
        let mut rng = crate::rng::seeded(1, 0);
        let a = VariableAssignment::random(&g, 1, &field, &mut rng);
        let d = Darts::new(&g, &a);
        assert_eq!(d.len(), 8);
        for x in 0..4 {
            for e in d.off[x]..d.off[x + 1] {
                let y = d.head[e];
                assert_eq!(d.head[d.rev[e]], x);
                assert_eq!(d.fe[e], d.fe[d.rev[e]]);
                assert_eq!(d.find(x, y), Some(e));
            }
        }
        assert_eq!(d.find(1, 3), None);
    }
}
