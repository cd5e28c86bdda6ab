//! Labeled walks and exhaustive enumeration of the family `F_l`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::BinaryField;
use crate::graph::ColoredWeightedGraph;
use crate::walk_dp::{VariableAssignment, WalkProblem};

/// A walk with a parallel label sequence; label `0` means unlabeled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledWalk {
    pub vertices: Vec<usize>,
    pub labels: Vec<usize>,
}

impl LabeledWalk {
    pub fn new(vertices: Vec<usize>, labels: Vec<usize>) -> Self {
        assert_eq!(vertices.len(), labels.len());
        LabeledWalk { vertices, labels }
    }

    pub fn unlabeled(vertices: Vec<usize>) -> Self {
        let labels = vec![0; vertices.len()];
        LabeledWalk { vertices, labels }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_walk_in(&self, graph: &ColoredWeightedGraph) -> bool {
        self.vertices.windows(2).all(|w| graph.has_edge(w[0], w[1]))
    }

    /// Indices `i` (0-based) with `v[i-1] = v[i+1]`.
    pub fn digons(&self) -> Vec<usize> {
        (1..self.len().saturating_sub(1))
            .filter(|&i| self.vertices[i - 1] == self.vertices[i + 1])
            .collect()
    }

    pub fn has_labeled_digon(&self) -> bool {
        self.digons().iter().any(|&i| self.labels[i] != 0)
    }

    /// The walk with positions `a..=b` reversed, labels included.
    pub fn reversed(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        out.vertices[a..=b].reverse();
        out.labels[a..=b].reverse();
        out
    }

    pub fn is_palindrome(&self) -> bool {
        self.is_empty() || *self == self.reversed(0, self.len() - 1)
    }
}

/// An ordered tuple of labeled walks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledWalkage {
    pub walks: Vec<LabeledWalk>,
}

impl LabeledWalkage {
    pub fn order(&self) -> usize {
        self.walks.len()
    }

    pub fn length(&self) -> usize {
        self.walks.iter().map(LabeledWalk::len).sum()
    }

    fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.walks.iter().flat_map(|w| w.labels.iter().copied()).filter(|&r| r != 0)
    }

    /// Every label appears at most once.
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.labels().all(|r| seen.insert(r))
    }

    /// Every label of `1..=k` appears exactly once.
    pub fn is_bijective(&self, k: usize) -> bool {
        let mut all: Vec<usize> = self.labels().collect();
        all.sort_unstable();
        all == (1..=k).collect::<Vec<_>>()
    }

    pub fn has_labeled_digon(&self) -> bool {
        self.walks.iter().any(LabeledWalk::has_labeled_digon)
    }

    pub fn ending_vertices(&self) -> Vec<usize> {
        self.walks.iter().filter_map(|w| w.vertices.last().copied()).collect()
    }

    pub fn starting_vertices(&self) -> Vec<usize> {
        self.walks.iter().filter_map(|w| w.vertices.first().copied()).collect()
    }

    pub fn has_distinct_endings(&self) -> bool {
        let ends = self.ending_vertices();
        let set: HashSet<usize> = ends.iter().copied().collect();
        set.len() == ends.len()
    }

    pub fn is_semiproper(&self) -> bool {
        self.is_injective() && !self.has_labeled_digon() && self.has_distinct_endings()
    }

    /// Semiproper, and the labeled indices carry pairwise distinct colors.
    pub fn is_proper(&self, graph: &ColoredWeightedGraph) -> bool {
        if !self.is_semiproper() {
            return false;
        }
        let mut colors = HashSet::new();
        self.walks.iter().all(|w| {
            w.vertices
                .iter()
                .zip(&w.labels)
                .filter(|(_, &r)| r != 0)
                .all(|(&v, _)| colors.insert(graph.color(v)))
        })
    }

    /// Starting vertices strictly increasing.
    pub fn is_ordered(&self) -> bool {
        self.starting_vertices().windows(2).all(|w| w[0] < w[1])
    }

    /// Weight of the labeled indices.
    pub fn weight(&self, graph: &ColoredWeightedGraph) -> u64 {
        self.walks
            .iter()
            .flat_map(|w| w.vertices.iter().zip(&w.labels))
            .filter(|(_, &r)| r != 0)
            .map(|(&v, _)| graph.weight(v))
            .sum()
    }

    /// `f(W)`: the product of the edge variables over every step and of
    /// `f_v(v) f_c(c(v), r)` over every labeled index.
    pub fn monomial(
        &self,
        field: &BinaryField,
        graph: &ColoredWeightedGraph,
        assign: &VariableAssignment,
    ) -> u32 {
        let mut acc = 1u32;
        for w in &self.walks {
            for e in w.vertices.windows(2) {
                acc = field.mul(acc, assign.edge[graph.edge_index(e[0], e[1]).unwrap()]);
            }
            for (&v, &r) in w.vertices.iter().zip(&w.labels) {
                if r != 0 {
                    acc = field.mul(acc, assign.vertex[v]);
                    acc = field.mul(acc, assign.fc(graph.color(v), r));
                }
            }
        }
        acc
    }

    /// Membership in `F_l` checked from the definition.
    pub fn is_member(&self, problem: &WalkProblem<'_>, l: usize) -> bool {
        let g = problem.graph;
        let mut ends = self.ending_vertices();
        ends.sort_unstable();
        let mut sinks = problem.sinks.to_vec();
        sinks.sort_unstable();
        self.order() == problem.p()
            && self.length() == l
            && self.walks.iter().all(|w| w.is_walk_in(g))
            && self.weight(g) == problem.w
            && self.is_bijective(problem.k)
            && self.is_semiproper()
            && self.starting_vertices() == problem.sources
            && ends == sinks
    }
}

/// Size guards for [`enumerate_walkage_family`].
pub const FAMILY_MAX_N: usize = 9;
pub const FAMILY_MAX_LEN: usize = 9;
pub const FAMILY_MAX_K: usize = 4;
pub const FAMILY_MAX_P: usize = 3;

fn family_guard(problem: &WalkProblem<'_>, l: usize) -> Result<()> {
    let n = problem.graph.n();
    if n > FAMILY_MAX_N || l > FAMILY_MAX_LEN || problem.k > FAMILY_MAX_K || problem.p() > FAMILY_MAX_P
    {
        return Err(Error::OracleGuard(format!(
            "walkage enumeration limited to n <= {FAMILY_MAX_N}, l <= {FAMILY_MAX_LEN}, \
             k <= {FAMILY_MAX_K}, p <= {FAMILY_MAX_P}; got n = {n}, l = {l}, k = {}, p = {}",
            problem.k,
            problem.p()
        )));
    }
    Ok(())
}

/// Every member of `F_l`.
pub fn enumerate_walkage_family(
    problem: &WalkProblem<'_>,
    l: usize,
) -> Result<Vec<LabeledWalkage>> {
    let mut out = Vec::new();
    visit_walkage_family(problem, l, |w| out.push(w.clone()))?;
    Ok(out)
}

/// Calls `visit` on every member of `F_l` without collecting them.
pub fn visit_walkage_family(
    problem: &WalkProblem<'_>,
    l: usize,
    mut visit: impl FnMut(&LabeledWalkage),
) -> Result<()> {
    family_guard(problem, l)?;
    let p = problem.p();
    if l < 2 * p {
        return Ok(());
    }
    let mut walks: Vec<Vec<usize>> = Vec::with_capacity(p);
    let mut used_ends = vec![false; problem.graph.n()];
    walkages(problem, l, &mut walks, &mut used_ends, &mut |ws| {
        place_labels(problem, ws, &mut visit)
    });
    Ok(())
}

/// Vertex sequences: walk `t` from the `t`-th source to an unused sink,
/// lengths at least two, total `l`.
fn walkages(
    problem: &WalkProblem<'_>,
    remaining: usize,
    walks: &mut Vec<Vec<usize>>,
    used_ends: &mut Vec<bool>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    let t = walks.len();
    let p = problem.p();
    if t == p {
        if remaining == 0 {
            emit(walks);
        }
        return;
    }
    let left_after = 2 * (p - t - 1);
    if remaining < 2 + left_after {
        return;
    }
    let max_here = remaining - left_after;
    let min_here = if t + 1 == p { remaining } else { 2 };
    let s = problem.sources[t];
    let mut walk = vec![s];
    let mut found: Vec<Vec<usize>> = Vec::new();
    walks_from(problem.graph, &mut walk, min_here, max_here, &mut |w| {
        let end = *w.last().unwrap();
        if problem.sinks.contains(&end) {
            found.push(w.to_vec());
        }
    });
    for w in found {
        let end = *w.last().unwrap();
        if used_ends[end] {
            continue;
        }
        used_ends[end] = true;
        let len = w.len();
        walks.push(w);
        walkages(problem, remaining - len, walks, used_ends, emit);
        walks.pop();
        used_ends[end] = false;
    }
}

fn walks_from(
    graph: &ColoredWeightedGraph,
    walk: &mut Vec<usize>,
    min_len: usize,
    max_len: usize,
    emit: &mut dyn FnMut(&[usize]),
) {
    if walk.len() >= min_len {
        emit(walk);
    }
    if walk.len() == max_len {
        return;
    }
    let last = *walk.last().unwrap();
    for &u in graph.neighbors(last) {
        walk.push(u);
        walks_from(graph, walk, min_len, max_len, emit);
        walk.pop();
    }
}

/// All bijective label placements with total weight `w` and no labeled digon.
fn place_labels(
    problem: &WalkProblem<'_>,
    walks: &[Vec<usize>],
    visit: &mut dyn FnMut(&LabeledWalkage),
) {
    let g = problem.graph;
    let k = problem.k;
    // Positions eligible for a label: not a digon.
    let mut slots = Vec::new();
    for (i, w) in walks.iter().enumerate() {
        for j in 0..w.len() {
            let digon = j > 0 && j + 1 < w.len() && w[j - 1] == w[j + 1];
            if !digon {
                slots.push((i, j));
            }
        }
    }
    let mut chosen = Vec::with_capacity(k);
    let mut walkage = LabeledWalkage {
        walks: walks.iter().map(|w| LabeledWalk::unlabeled(w.clone())).collect(),
    };
    choose(&slots, 0, k, &mut chosen, &mut |pos: &[(usize, usize)]| {
        let weight: u64 = pos.iter().map(|&(i, j)| g.weight(walks[i][j])).sum();
        if weight != problem.w {
            return;
        }
        let mut perm: Vec<usize> = (1..=k).collect();
        permutations(&mut perm, 0, &mut |labels| {
            for (&(i, j), &r) in pos.iter().zip(labels) {
                walkage.walks[i].labels[j] = r;
            }
            visit(&walkage);
            for &(i, j) in pos {
                walkage.walks[i].labels[j] = 0;
            }
        });
    });
}

fn choose<T: Copy>(
    items: &[T],
    from: usize,
    k: usize,
    chosen: &mut Vec<T>,
    emit: &mut dyn FnMut(&[T]),
) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    let need = k - chosen.len();
    for i in from..items.len() {
        if items.len() - i < need {
            break;
        }
        chosen.push(items[i]);
        choose(items, i + 1, k, chosen, emit);
        chosen.pop();
    }
}

fn permutations(items: &mut Vec<usize>, at: usize, emit: &mut dyn FnMut(&[usize])) {
    if at == items.len() {
        emit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permutations(items, at + 1, emit);
        items.swap(at, i);
    }
}

/// `sum_{W in family} f(W)`.
pub fn sum_monomials(
    field: &BinaryField,
    graph: &ColoredWeightedGraph,
    family: &[LabeledWalkage],
    assign: &VariableAssignment,
) -> u32 {
    family
        .iter()
        .fold(0, |acc, w| acc ^ w.monomial(field, graph, assign))
}

/// `f(F_l)` at several assignments from one enumeration pass.
pub fn family_sums(
    field: &BinaryField,
    problem: &WalkProblem<'_>,
    l: usize,
    assigns: &[VariableAssignment],
) -> Result<Vec<u32>> {
    let mut sums = vec![0u32; assigns.len()];
    visit_walkage_family(problem, l, |w| {
        for (s, a) in sums.iter_mut().zip(assigns) {
            *s ^= w.monomial(field, problem.graph, a);
        }
    })?;
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3(we_a: u64) -> ColoredWeightedGraph {
        // s = 0, a = 1, t = 2
        ColoredWeightedGraph::new(3, [(0, 1), (1, 2)], vec![1, 2, 3], vec![7, we_a, 5]).unwrap()
    }

    #[test]
    fn forced_label_single_member() {
        let g = path3(1);
        let prob = WalkProblem {
            graph: &g,
            sources: &[0],
            sinks: &[2],
            k: 1,
            w: 1,
        };
        let fam = enumerate_walkage_family(&prob, 3).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].walks[0].labels, vec![0, 1, 0]);
        assert!(fam.iter().all(|w| w.is_member(&prob, 3)));
    }

    #[test]
    fn two_labels_two_bijections() {
        let g = path3(1);
        let prob = WalkProblem {
            graph: &g,
            sources: &[0],
            sinks: &[2],
            k: 2,
            w: 6,
        };
        let fam = enumerate_walkage_family(&prob, 3).unwrap();
        assert_eq!(fam.len(), 2);
    }

    #[test]
    fn short_lengths_are_empty() {
        let g = path3(1);
        let prob = WalkProblem {
            graph: &g,
            sources: &[0],
            sinks: &[2],
            k: 1,
            w: 1,
        };
        assert!(enumerate_walkage_family(&prob, 0).unwrap().is_empty());
        assert!(enumerate_walkage_family(&prob, 1).unwrap().is_empty());
        assert!(enumerate_walkage_family(&prob, 2).unwrap().is_empty());
    }

    #[test]
    fn digon_and_palindrome_predicates() {
        let w = LabeledWalk::new(vec![0, 1, 0, 2], vec![0, 1, 0, 0]);
        assert_eq!(w.digons(), vec![1]);
        assert!(w.has_labeled_digon());
        let u = LabeledWalk::new(vec![0, 1, 0], vec![0, 2, 0]);
        assert!(u.is_palindrome());
        assert!(!LabeledWalk::new(vec![0, 1, 0], vec![1, 0, 0]).is_palindrome());
        let r = LabeledWalk::new(vec![1, 2, 3, 4], vec![0, 1, 0, 2]).reversed(1, 2);
        assert_eq!(r, LabeledWalk::new(vec![1, 3, 2, 4], vec![0, 0, 1, 2]));
    }

    #[test]
    fn guard_rejects_large() {
        let g = ColoredWeightedGraph::bijective(12, []).unwrap();
        let prob = WalkProblem {
            graph: &g,
            sources: &[0],
            sinks: &[1],
            k: 1,
            w: 1,
        };
        assert!(matches!(
            enumerate_walkage_family(&prob, 3),
            Err(Error::OracleGuard(_))
        ));
    }
}
