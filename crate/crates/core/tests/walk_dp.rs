use colorlink::field::{build_core_field, BinaryField};
use colorlink::generate::random_graph;
use colorlink::oracle::family_sums;
use colorlink::rng::seeded;
use colorlink::walk_dp::{
    evaluate, evaluate_upto, EvalOptions, Evaluator, VariableAssignment, WalkProblem,
};
use colorlink::ColoredWeightedGraph;
use rand::seq::SliceRandom;
use rand::Rng;

fn opts(evaluator: Evaluator) -> EvalOptions {
    EvalOptions {
        evaluator,
        ..Default::default()
    }
}

#[test]
fn single_member_value() {
    // s - a - t with only a light enough to be labeled.
    let g = ColoredWeightedGraph::new(3, [(0, 1), (1, 2)], vec![1, 2, 3], vec![9, 2, 9]).unwrap();
    let field = BinaryField::new(8).unwrap();
    let prob = WalkProblem {
        graph: &g,
        sources: &[0],
        sinks: &[2],
        k: 1,
        w: 2,
    };
    let mut rng = seeded(5, 0);
    for _ in 0..5 {
        let a = VariableAssignment::random(&g, 1, &field, &mut rng);
        let e_sa = a.edge[g.edge_index(0, 1).unwrap()];
        let e_at = a.edge[g.edge_index(1, 2).unwrap()];
        let expect = field.mul(field.mul(e_sa, e_at), field.mul(a.vertex[1], a.fc(2, 1)));
        for ev in [Evaluator::Layered, Evaluator::Sieve] {
            assert_eq!(evaluate(&field, &prob, 3, &a, &opts(ev)).unwrap(), expect);
        }
    }
}

#[test]
fn evaluators_match_enumeration() {
    let mut rng = seeded(11, 0);
    let mut checked = 0;
    let mut nonzero = 0;
    while checked < 25 {
        let n = rng.gen_range(3..=5);
        let g = random_graph(n, 2.2, rng.gen_range(2..=n), (1, 3), &mut rng);
        let p = rng.gen_range(1..=2usize).min(n / 2);
        let k = rng.gen_range(0..=3usize);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let mut sources = vs[..p].to_vec();
        sources.sort_unstable();
        let sinks = vs[p..2 * p].to_vec();
        let w = (0..k).map(|_| rng.gen_range(1..=3u64)).sum::<u64>().max(k as u64);
        let field = build_core_field(n).unwrap();
        let prob = WalkProblem {
            graph: &g,
            sources: &sources,
            sinks: &sinks,
            k,
            w,
        };
        let assigns: Vec<VariableAssignment> = (0..4)
            .map(|_| VariableAssignment::random(&g, k, &field, &mut rng))
            .collect();
        let max_len = 7;
        let layered: Vec<Vec<u32>> = assigns
            .iter()
            .map(|a| evaluate_upto(&field, &prob, max_len, a, &opts(Evaluator::Layered)).unwrap())
            .collect();
        let sieve: Vec<Vec<u32>> = assigns
            .iter()
            .map(|a| evaluate_upto(&field, &prob, max_len, a, &opts(Evaluator::Sieve)).unwrap())
            .collect();
        for l in 0..=max_len {
            let want = family_sums(&field, &prob, l, &assigns).unwrap();
            nonzero += want.iter().filter(|&&v| v != 0).count();
            for i in 0..assigns.len() {
                assert_eq!(layered[i][l], want[i], "layered n={n} p={p} k={k} w={w} l={l}");
                assert_eq!(sieve[i][l], want[i], "sieve n={n} p={p} k={k} w={w} l={l}");
            }
        }
        checked += 1;
    }
    assert!(nonzero > 100, "only {nonzero} nonzero sums");
}
