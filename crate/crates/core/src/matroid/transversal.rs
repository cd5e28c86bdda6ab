//! Transversal matroids: a set of left vertices is independent when it can
//! be matched into the right side.

use std::sync::Arc;

use rand::Rng;

use super::LinearMatroid;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldSpec};
use crate::graph::TransversalDoc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalInstance {
    pub left: usize,
    pub right: usize,
    /// `(a, b)` with `a < left` and `b < right`.
    pub edges: Vec<(usize, usize)>,
}

impl TransversalInstance {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= left || b >= right) {
            return Err(Error::invalid(format!(
                "transversal: edge ({a}, {b}) outside {left} x {right}"
            )));
        }
        Ok(TransversalInstance { left, right, edges })
    }

    pub fn from_doc(doc: &TransversalDoc, n: usize) -> Result<Self> {
        Self::new(n, doc.right_size, doc.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    /// Exact independence by augmenting paths.
    pub fn is_independent(&self, xs: &[usize]) -> bool {
        let mut adj = vec![Vec::new(); self.left];
        for &(a, b) in &self.edges {
            adj[a].push(b);
        }
        let mut owner = vec![usize::MAX; self.right];
        fn augment(a: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
            for &b in &adj[a] {
                if seen[b] {
                    continue;
                }
                seen[b] = true;
                if owner[b] == usize::MAX || augment(owner[b], adj, owner, seen) {
                    owner[b] = a;
                    return true;
                }
            }
            false
        }
        let mut sorted = xs.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        xs.iter().all(|&a| {
            let mut seen = vec![false; self.right];
            augment(a, &adj, &mut owner, &mut seen)
        })
    }
}

/// Least prime at least `m`.
pub(crate) fn next_prime(m: u64) -> u64 {
    (m.max(2)..).find(|&q| is_prime(q)).expect("primes are unbounded")
}

/// `right x left` matrix over GF(least prime >= 2k) with a uniformly random
/// entry on every edge and zero elsewhere.
pub fn transversal_to_linear<R: Rng + ?Sized>(
    t: &TransversalInstance,
    k: usize,
    rng: &mut R,
) -> Result<LinearMatroid> {
    let spec = Arc::new(FieldSpec::prime(next_prime(2 * k as u64))?);
    let mut entries = vec![0u64; t.right * t.left];
    for &(a, b) in &t.edges {
        entries[b * t.left + a] = spec.sample(rng);
    }
    LinearMatroid::new(spec, t.right, t.left, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn matching_oracle() {
        let t = TransversalInstance::new(3, 2, vec![(0, 0), (1, 0), (2, 1)]).unwrap();
        assert!(t.is_independent(&[0, 2]));
        assert!(!t.is_independent(&[0, 1]));
        assert!(!t.is_independent(&[0, 1, 2]));
    }

    #[test]
    fn isolated_element_is_a_loop() {
        let t = TransversalInstance::new(3, 2, vec![(0, 0), (1, 1)]).unwrap();
        let mut rng = seeded(1, 0);
        for _ in 0..20 {
            let m = transversal_to_linear(&t, 2, &mut rng).unwrap();
            assert!(m.column(2).iter().all(|&x| x == 0));
            assert!(!m.is_independent(&[2]));
            assert!(!m.is_independent(&[0, 2]));
        }
    }

    #[test]
    fn perfect_matching_survives() {
        let k = 3;
        let edges = vec![(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)];
        let t = TransversalInstance::new(k, k, edges).unwrap();
        let mut rng = seeded(2, 0);
        let hits = (0..100)
            .filter(|_| transversal_to_linear(&t, k, &mut rng).unwrap().is_independent(&[0, 1, 2]))
            .count();
        assert!(hits >= 40, "{hits}");
    }

    #[test]
    fn single_common_neighbor_is_dependent() {
        let t = TransversalInstance::new(2, 3, vec![(0, 1), (1, 1)]).unwrap();
        let mut rng = seeded(3, 0);
        for _ in 0..50 {
            let m = transversal_to_linear(&t, 2, &mut rng).unwrap();
            assert!(!m.is_independent(&[0, 1]));
        }
    }
}
