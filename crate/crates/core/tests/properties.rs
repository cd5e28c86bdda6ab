use std::sync::Arc;

use colorlink::det::{separation_family, solve_longest_linkage, validate_directed_linkage};
use colorlink::field::{BinaryField, FieldSpec};
use colorlink::matroid::{lossy_truncate, LinearMatroid};
use colorlink::oracle::{LabeledWalk, LabeledWalkage};
use colorlink::rng::seeded;
use colorlink::{ColoredWeightedGraph, Digraph};
use proptest::prelude::*;

fn gf5_matrix() -> impl Strategy<Value = LinearMatroid> {
    proptest::collection::vec(0u64..5, 15).prop_map(|entries| {
        LinearMatroid::new(Arc::new(FieldSpec::prime(5).unwrap()), 3, 5, entries).unwrap()
    })
}

fn members(mask: u32) -> Vec<usize> {
    (0..5).filter(|i| mask >> i & 1 == 1).collect()
}

proptest! {
    #[test]
    fn binary_field_is_a_field(bits in 2u32..=16, a: u32, b: u32, c: u32) {
        let f = BinaryField::new(bits).unwrap();
        let m = (f.order() - 1) as u32;
        let (a, b, c) = (a & m, b & m, c & m);
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn linear_matroid_axioms(m in gf5_matrix()) {
        let ind: Vec<bool> = (0u32..32).map(|x| m.is_independent(&members(x))).collect();
        prop_assert!(ind[0]);
        for x in 0u32..32 {
            if !ind[x as usize] {
                continue;
            }
            // Subsets of independent sets are independent.
            for y in 0u32..32 {
                if y & !x == 0 {
                    prop_assert!(ind[y as usize]);
                }
            }
            // Augmentation from any larger independent set.
            for y in 0u32..32 {
                if ind[y as usize] && y.count_ones() > x.count_ones() {
                    let can = (0..5).any(|e| y >> e & 1 == 1 && x >> e & 1 == 0 && ind[(x | 1 << e) as usize]);
                    prop_assert!(can);
                }
            }
        }
    }

    #[test]
    fn truncation_keeps_dependence(m in gf5_matrix(), k in 1usize..=3, seed: u64) {
        let t = lossy_truncate(&m, k, &mut seeded(seed, 0)).unwrap();
        prop_assert_eq!(t.rows(), k);
        for x in 0u32..32 {
            let xs = members(x);
            if !m.is_independent(&xs) {
                prop_assert!(!t.is_independent(&xs));
            }
        }
    }

    #[test]
    fn walk_reversal_is_an_involution(vs in proptest::collection::vec(0usize..6, 2..8), a in 0usize..8, b in 0usize..8) {
        let labels = vec![0; vs.len()];
        let walk = LabeledWalk::new(vs.clone(), labels);
        let (lo, hi) = (a.min(b) % vs.len(), a.max(b) % vs.len());
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        let twice = walk.reversed(lo, hi).reversed(lo, hi);
        prop_assert_eq!(twice.vertices, vs);
    }

    #[test]
    fn linkages_classify_as_semiproper(
        perm in Just((0usize..6).collect::<Vec<_>>()).prop_shuffle(),
        cut in 1usize..6,
        labeled in proptest::collection::vec(any::<bool>(), 6),
        colors in proptest::collection::vec(1u32..=3, 6),
    ) {
        let mut next = 1;
        let labels: Vec<usize> = labeled
            .iter()
            .map(|&b| if b { next += 1; next - 1 } else { 0 })
            .collect();
        let walkage = LabeledWalkage {
            walks: vec![
                LabeledWalk::new(perm[..cut].to_vec(), labels[..cut].to_vec()),
                LabeledWalk::new(perm[cut..].to_vec(), labels[cut..].to_vec()),
            ],
        };
        prop_assert!(walkage.is_injective());
        prop_assert!(walkage.is_semiproper());
        prop_assert!(walkage.is_bijective(next - 1));
        let g = ColoredWeightedGraph::new(6, [], colors.clone(), vec![1; 6]).unwrap();
        let mut used: Vec<u32> = perm.iter().zip(&labels).filter(|(_, &r)| r != 0).map(|(&v, _)| colors[v]).collect();
        let count = used.len();
        used.sort_unstable();
        used.dedup();
        prop_assert_eq!(walkage.is_proper(&g), used.len() == count);
    }

    #[test]
    fn separation_family_separates(n in 2usize..=7, a in 1usize..=2, b in 1usize..=2) {
        prop_assume!(a + b <= n);
        prop_assert!(separation_family(n, &[a, b]).separates_all());
    }

    #[test]
    fn deterministic_linkages_validate(
        n in 2usize..=7,
        arcs in proptest::collection::vec((0usize..7, 0usize..7), 0..20),
        p in 1usize..=2,
        k in 0usize..=6,
    ) {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        arcs.sort_unstable();
        arcs.dedup();
        let d = Digraph::new(n, arcs).unwrap();
        let (s, t): (Vec<usize>, Vec<usize>) = ((0..n / 2 + 1).collect(), (n / 2..n).collect());
        if let Some(paths) = solve_longest_linkage(&d, &s, &t, p, k).unwrap() {
            prop_assert!(validate_directed_linkage(&d, &s, &t, p, k, &paths).is_ok());
        }
    }
}
