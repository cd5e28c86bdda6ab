//! Perfect hash families and separation families with exhaustive checkers.

use crate::rng::seeded;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashSet;

/// Largest number of `ℓ`-subsets the greedy cover enumerates.
const SUBSET_LIMIT: u64 = 60_000;
const CANDIDATES: usize = 8;

/// Functions `[n] → [ℓ]` such that every `ℓ`-subset is mapped injectively by
/// some member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectHashFamily {
    pub n: usize,
    pub range: usize,
    pub functions: Vec<Vec<u32>>,
}

/// Functions `[n] → [q]` such that for disjoint `A_1..A_q` with
/// `|A_i| <= k_i` and `sum |A_i| <= n` some member maps every `A_i` into
/// class `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationFamily {
    pub n: usize,
    pub sizes: Vec<usize>,
    pub functions: Vec<Vec<u8>>,
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k.min(n));
    let mut c: u64 = 1;
    for i in 0..k {
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    c
}

fn subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..k as u32).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < n - k + i {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn injective_on(f: &[u32], set: &[u32]) -> bool {
    let mut seen = 0u64;
    for &x in set {
        let bit = 1u64 << f[x as usize];
        if seen & bit != 0 {
            return false;
        }
        seen |= bit;
    }
    true
}

fn next_prime(n: usize) -> usize {
    let mut p = n.max(2);
    while !(2..).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        p += 1;
    }
    p
}

/// An `(n, ℓ)`-perfect hash family. Requires `1 <= ℓ <= min(n, 64)`.
pub fn perfect_hash_family(n: usize, range: usize) -> PerfectHashFamily {
    assert!(range >= 1 && range <= n && range <= 64, "need 1 <= ℓ <= min(n, 64)");
    let functions = if range == 1 {
        vec![vec![0; n]]
    } else if range == n {
        vec![(0..n as u32).collect()]
    } else if range == 2 {
        let bits = usize::BITS - (n - 1).leading_zeros();
        (0..bits)
            .map(|b| (0..n).map(|x| ((x >> b) & 1) as u32).collect())
            .collect()
    } else if binomial(n, range) > SUBSET_LIMIT && range * range < n {
        two_level(n, range)
    } else {
        greedy(n, range)
    };
    PerfectHashFamily { n, range, functions }
}

/// Greedy cover of all `ℓ`-subsets by functions injective on the first
/// uncovered subset.
fn greedy(n: usize, range: usize) -> Vec<Vec<u32>> {
    let mut rng = seeded(0x5eed, (n * 64 + range) as u64);
    let mut uncovered = subsets(n, range);
    let mut out = Vec::new();
    let mut perm: Vec<u32> = (0..range as u32).collect();
    while let Some(first) = uncovered.first().cloned() {
        let mut best: Option<(usize, Vec<u32>)> = None;
        for _ in 0..CANDIDATES {
            let mut f: Vec<u32> = (0..n).map(|_| rng.gen_range(0..range as u32)).collect();
            perm.shuffle(&mut rng);
            for (i, &x) in first.iter().enumerate() {
                f[x as usize] = perm[i];
            }
            let hits = uncovered.iter().filter(|s| injective_on(&f, s)).count();
            if best.as_ref().map_or(true, |(b, _)| hits > *b) {
                best = Some((hits, f));
            }
        }
        let f = best.expect("at least one candidate").1;
        uncovered.retain(|s| !injective_on(&f, s));
        out.push(f);
    }
    out
}

/// `x ↦ ((a·x) mod P) mod ℓ²` for every `a` in `1..P`, composed with an
/// `(ℓ², ℓ)`-family.
pub(crate) fn two_level(n: usize, range: usize) -> Vec<Vec<u32>> {
    let sq = range * range;
    let prime = next_prime(n);
    let inner = perfect_hash_family(sq, range).functions;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 1..prime {
        let outer: Vec<usize> = (0..n).map(|x| (a * x % prime) % sq).collect();
        for g in &inner {
            let f: Vec<u32> = outer.iter().map(|&y| g[y]).collect();
            if seen.insert(f.clone()) {
                out.push(f);
            }
        }
    }
    out
}

impl PerfectHashFamily {
    /// Exhaustive check over all `ℓ`-subsets.
    pub fn covers_all(&self) -> bool {
        subsets(self.n, self.range)
            .iter()
            .all(|s| self.functions.iter().any(|f| injective_on(f, s)))
    }
}

/// Maps `[ℓ] → [q]` with at most `sizes[i]` elements in class `i`.
fn capacity_maps(len: usize, sizes: &[usize]) -> Vec<Vec<u8>> {
    fn rec(i: usize, len: usize, left: &mut [usize], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == len {
            out.push(cur.clone());
            return;
        }
        for c in 0..left.len() {
            if left[c] > 0 {
                left[c] -= 1;
                cur.push(c as u8);
                rec(i + 1, len, left, cur, out);
                cur.pop();
                left[c] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut left = sizes.to_vec();
    rec(0, len, &mut left, &mut Vec::with_capacity(len), &mut out);
    out
}

/// A separation family for classes of sizes `sizes` over `[n]`. When the
/// sizes sum past `n` the family covers every choice of disjoint sets that
/// fits in `[n]` with `|A_i| <= k_i`.
pub fn separation_family(n: usize, sizes: &[usize]) -> SeparationFamily {
    assert!(!sizes.is_empty() && sizes.len() <= u8::MAX as usize);
    let total: usize = sizes.iter().sum();
    let len = total.min(n);
    let functions = if sizes.len() == 1 || len == 0 {
        vec![vec![0u8; n]]
    } else {
        let hashes = perfect_hash_family(n, len).functions;
        let maps = capacity_maps(len, sizes);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for h in &hashes {
            for g in &maps {
                let f: Vec<u8> = h.iter().map(|&y| g[y as usize]).collect();
                if seen.insert(f.clone()) {
                    out.push(f);
                }
            }
        }
        out
    };
    SeparationFamily {
        n,
        sizes: sizes.to_vec(),
        functions,
    }
}

impl SeparationFamily {
    /// Exhaustive check over all ordered tuples of disjoint sets with
    /// `|A_i| = k_i`. Requires `sum k_i <= n <= 64`.
    pub fn separates_all(&self) -> bool {
        let masks: Vec<Vec<u64>> = self
            .functions
            .iter()
            .map(|f| {
                let mut m = vec![0u64; self.sizes.len()];
                for (x, &c) in f.iter().enumerate() {
                    m[c as usize] |= 1 << x;
                }
                m
            })
            .collect();
        let mut chosen = Vec::new();
        self.tuples(0, 0, &mut chosen, &masks)
    }

    fn tuples(&self, i: usize, used: u64, chosen: &mut Vec<u64>, masks: &[Vec<u64>]) -> bool {
        if i == self.sizes.len() {
            return masks
                .iter()
                .any(|m| chosen.iter().zip(m).all(|(a, c)| a & !c == 0));
        }
        for s in subsets(self.n, self.sizes[i]) {
            let a = s.iter().fold(0u64, |acc, &x| acc | 1 << x);
            if a & used != 0 {
                continue;
            }
            chosen.push(a);
            let ok = self.tuples(i + 1, used | a, chosen, masks);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 4).len(), 1);
        assert_eq!(binomial(10, 3), 120);
    }

    #[test]
    fn small_families_cover() {
        for n in 1..=10 {
            for l in 1..=n.min(4) {
                assert!(perfect_hash_family(n, l).covers_all(), "n={n} ℓ={l}");
            }
        }
    }

    #[test]
    fn two_level_covers() {
        let f = PerfectHashFamily {
            n: 14,
            range: 3,
            functions: two_level(14, 3),
        };
        assert!(f.covers_all());
    }

    #[test]
    fn pairs_use_bits() {
        let f = perfect_hash_family(4, 2);
        assert_eq!(f.functions.len(), 2);
        assert!(f.covers_all());
    }

    #[test]
    fn capacity_maps_are_multinomial() {
        assert_eq!(capacity_maps(4, &[2, 2]).len(), 6);
        assert_eq!(capacity_maps(3, &[1, 1, 1]).len(), 6);
        assert_eq!(capacity_maps(2, &[5, 5]).len(), 4);
    }

    #[test]
    fn oversized_classes_still_separate() {
        let f = separation_family(4, &[3, 3]);
        assert_eq!(f.functions.len(), 14);
        let g = SeparationFamily {
            sizes: vec![2, 2],
            ..f
        };
        assert!(g.separates_all());
    }
}
