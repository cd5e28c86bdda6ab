//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs sequentially so the timing criterion is not disturbed.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use colorlink::det::{perfect_hash_family, separation_family, solve_longest_linkage, validate_directed_linkage};
use colorlink::field::{build_core_field, FieldSpec};
use colorlink::generate::{random_digraph, random_graph, random_instance, GenParams};
use colorlink::graph::{load_instance, normalize, validate_solution, NormalizedQuery};
use colorlink::matroid::{framework_pipeline, lossy_truncate, FrameworkConfig, LinearMatroid, MatroidSource};
use colorlink::oracle::apps::{
    min_covering_flower, min_k_colored_at_least, shortest_cycle_through,
};
use colorlink::oracle::{
    enumerate_walkage_family, family_sums, longest_linkage_digraph, min_colored_linkage,
    min_linkage_with,
};
use colorlink::reductions::{longest_k_colored_linkage, longest_t_cycle, t_cycle, vrp_flower};
use colorlink::rng::seeded;
use colorlink::solver::solve_report;
use colorlink::walk_dp::{evaluate, evaluate_upto, polynomial_degree, EvalOptions, VariableAssignment, WalkProblem};
use colorlink::{ColoredWeightedGraph, LinkageQuery, SolverConfig};
use rand::seq::SliceRandom;
use rand::Rng;
use std::sync::Arc;

const MAX_LEN: usize = 7;
const ASSIGNMENTS: usize = 10;
const RATE_POINTS: usize = 400;
const RATE_MIN: f64 = 0.45;
const SURVIVAL_TRIALS: usize = 200;
const SURVIVAL_MIN: f64 = 0.40;
const RATIO_RANGE: (f64, f64) = (1.5, 3.0);
const FULL_SOLVE_LIMIT: Duration = Duration::from_secs(300);
const TRIALS: usize = 20;

type Verdict = (bool, String);

struct Case {
    nq: NormalizedQuery,
    /// Optimum of the original query, shifted onto the normalized graph.
    optimum: Option<usize>,
}

fn corpus() -> Vec<Case> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/acceptance");
    let mut files: Vec<PathBuf> = fs::read_dir(root).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .iter()
        .map(|p| {
            let inst = load_instance(&fs::read(p).unwrap()).unwrap();
            let (g, q) = (inst.graph.unwrap(), inst.query.unwrap());
            let nq = match NormalizedQuery::identity(&g, &q) {
                Some(nq) => nq,
                None => normalize(&g, &q).unwrap(),
            };
            let optimum = min_colored_linkage(&g, &q).unwrap().map(|o| o.length + nq.offset());
            Case { nq, optimum }
        })
        .collect()
}

fn problem<'a>(g: &'a ColoredWeightedGraph, q: &'a LinkageQuery) -> WalkProblem<'a> {
    WalkProblem {
        graph: g,
        sources: &q.sources,
        sinks: &q.sinks,
        k: q.k,
        w: q.w,
    }
}

fn solver(seed: u64) -> SolverConfig {
    SolverConfig {
        trials_per_length: TRIALS,
        ..SolverConfig::with_seed(seed)
    }
}

/// Criteria 1 and 2 share the evaluations.
fn dp_and_cancellation(corpus: &[Case]) -> (Verdict, Verdict) {
    let mut rng = seeded(1, 0);
    let (mut compared, mut mismatches) = (0, 0);
    let (mut cancel_checked, mut cancel_fail) = (0, 0);
    for case in corpus {
        let (g, q) = (&case.nq.graph, &case.nq.query);
        let field = build_core_field(g.n()).unwrap();
        let prob = problem(g, q);
        let assigns: Vec<VariableAssignment> =
            (0..ASSIGNMENTS).map(|_| VariableAssignment::random(g, q.k, &field, &mut rng)).collect();
        let top = MAX_LEN.min(g.n());
        let dp: Vec<Vec<u32>> = assigns
            .iter()
            .map(|a| evaluate_upto(&field, &prob, top, a, &EvalOptions::default()).unwrap())
            .collect();
        let optimum = case.optimum;
        for l in q.p..=top {
            let want = family_sums(&field, &prob, l, &assigns).unwrap();
            for (i, &w) in want.iter().enumerate() {
                compared += 1;
                if dp[i][l] != w {
                    mismatches += 1;
                }
            }
            if optimum.is_none_or(|o| o > l) {
                for row in &dp {
                    cancel_checked += 1;
                    if row[l] != 0 {
                        cancel_fail += 1;
                    }
                }
            }
        }
    }
    (
        (
            mismatches == 0 && compared > 0,
            format!("{} instances, {compared} (length, assignment) values, {mismatches} mismatches (tolerance 0)", corpus.len()),
        ),
        (
            cancel_fail == 0 && cancel_checked > 0,
            format!("{cancel_checked} evaluations below the optimum, {cancel_fail} nonzero (tolerance 0)"),
        ),
    )
}

fn nonvanishing(corpus: &[Case]) -> Verdict {
    let mut rng = seeded(3, 0);
    let mut worst = f64::INFINITY;
    let mut tested = 0;
    for Case { nq, optimum } in corpus {
        let Some(l) = *optimum else {
            continue;
        };
        let field = build_core_field(nq.graph.n()).unwrap();
        let prob = problem(&nq.graph, &nq.query);
        let hits = (0..RATE_POINTS)
            .filter(|_| {
                let a = VariableAssignment::random(&nq.graph, nq.query.k, &field, &mut rng);
                evaluate(&field, &prob, l, &a, &EvalOptions::default()).unwrap() != 0
            })
            .count();
        tested += 1;
        worst = worst.min(hits as f64 / RATE_POINTS as f64);
    }
    (
        tested > 0 && worst >= RATE_MIN,
        format!("{tested} feasible instances, lowest nonzero rate {worst:.3} over {RATE_POINTS} points (need >= {RATE_MIN})"),
    )
}

fn end_to_end() -> Verdict {
    let mut rng = seeded(4, 0);
    let (mut mismatches, mut invalid, mut feasible) = (0, 0, 0);
    for i in 0..200u64 {
        let n = rng.gen_range(3..=7);
        let p = rng.gen_range(1..=2usize).min(n / 2).max(1);
        let params = GenParams {
            n,
            avg_degree: rng.gen_range(1.5..3.0),
            colors: rng.gen_range(0..=n),
            min_weight: 1,
            max_weight: 5,
            p,
            k: rng.gen_range(0..=4usize).min(n),
            planted: rng.gen_bool(0.7),
        };
        let (g, q) = random_instance(&params, &mut rng);
        let want = min_colored_linkage(&g, &q).unwrap().map(|o| o.length);
        let got = solve_report(&g, &q, &solver(i)).unwrap().solution;
        if let Some(sol) = &got {
            if validate_solution(&g, &q, sol).is_err() {
                invalid += 1;
            }
        }
        feasible += usize::from(want.is_some());
        if got.map(|s| s.total_length) != want {
            mismatches += 1;
        }
    }
    (
        mismatches == 0 && invalid == 0,
        format!("200 instances ({feasible} feasible), {mismatches} length mismatches, {invalid} invalid solutions (tolerance 0)"),
    )
}

fn degree_law(corpus: &[Case]) -> Verdict {
    let (mut monomials, mut bad) = (0usize, 0usize);
    for case in corpus.iter().take(20) {
        let (g, q) = (&case.nq.graph, &case.nq.query);
        let prob = problem(g, q);
        for l in q.p..=MAX_LEN.min(g.n()) {
            let expect = polynomial_degree(l, q.p, q.k);
            assert_eq!(expect, l - q.p + 2 * q.k);
            for w in enumerate_walkage_family(&prob, l).unwrap() {
                // One edge variable per step, a vertex and a color-label variable per label.
                let edges: usize = w.walks.iter().map(|x| x.vertices.len() - 1).sum();
                let labels: usize = w.walks.iter().flat_map(|x| &x.labels).filter(|&&r| r != 0).count();
                monomials += 1;
                if edges + 2 * labels != expect {
                    bad += 1;
                }
            }
        }
    }
    (
        bad == 0 && monomials > 0,
        format!("20 instances, {monomials} monomials, {bad} with degree != l - p + 2k (tolerance 0)"),
    )
}

fn gf5() -> Arc<FieldSpec> {
    Arc::new(FieldSpec::prime(5).unwrap())
}

fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> LinearMatroid {
    let entries = (0..rows * cols).map(|_| rng.gen_range(0..5)).collect();
    LinearMatroid::new(gf5(), rows, cols, entries).unwrap()
}

fn truncation() -> Verdict {
    let mut rng = seeded(6, 0);
    let (mut dependent, mut leaked) = (0, 0);
    for _ in 0..500 {
        let rows = rng.gen_range(3..=5);
        let cols = rng.gen_range(4..=7);
        let mut m = random_matrix(rows, cols, &mut rng);
        if rng.gen_bool(0.5) {
            // Repeat a column so small dependent sets exist.
            let mut entries: Vec<u64> = (0..rows * cols).map(|i| m.entry(i / cols, i % cols)).collect();
            let (a, b) = (rng.gen_range(0..cols), rng.gen_range(0..cols));
            for r in 0..rows {
                entries[r * cols + b] = entries[r * cols + a];
            }
            m = LinearMatroid::new(gf5(), rows, cols, entries).unwrap();
        }
        let k = rng.gen_range(1..=3);
        let t = lossy_truncate(&m, k, &mut rng).unwrap();
        for mask in 1u32..1 << cols {
            let xs: Vec<usize> = (0..cols).filter(|i| mask >> i & 1 == 1).collect();
            if m.is_independent(&xs) {
                continue;
            }
            dependent += 1;
            if t.is_independent(&xs) {
                leaked += 1;
            }
        }
    }
    let mut worst = f64::INFINITY;
    for rows in 3..=5 {
        for k in 1..=3 {
            let (m, xs) = loop {
                let m = random_matrix(rows, 6, &mut rng);
                let xs: Vec<usize> = (0..k).collect();
                if m.is_independent(&xs) {
                    break (m, xs);
                }
            };
            let kept = (0..SURVIVAL_TRIALS)
                .filter(|_| lossy_truncate(&m, k, &mut rng).unwrap().is_independent(&xs))
                .count();
            worst = worst.min(kept as f64 / SURVIVAL_TRIALS as f64);
        }
    }
    (
        leaked == 0 && worst >= SURVIVAL_MIN,
        format!(
            "500 cases ({dependent} dependent subsets, {leaked} became independent, tolerance 0); lowest survival {worst:.3} over {SURVIVAL_TRIALS} trials in 9 classes (need >= {SURVIVAL_MIN})"
        ),
    )
}

fn framework() -> Verdict {
    let mut rng = seeded(7, 0);
    let (mut mismatches, mut feasible) = (0, 0);
    let count = 30;
    for i in 0..count as u64 {
        let n = rng.gen_range(3..=7);
        let g = random_graph(n, 2.5, 0, (1, 1), &mut rng);
        let m = random_matrix(3, n, &mut rng);
        let k = rng.gen_range(1..=3usize).min(n);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let q = LinkageQuery::new(vec![vs[0]], vec![vs[1]], 1, k, k as u64);
        let want = min_linkage_with(&g, &q, &|xs| m.is_independent(xs)).unwrap().map(|o| o.length);
        let cfg = FrameworkConfig {
            solver: solver(i),
            rounds: 20,
        };
        let got = framework_pipeline(&g, &MatroidSource::Linear(m), &q, &cfg).unwrap();
        feasible += usize::from(want.is_some());
        if got.map(|s| s.total_length) != want {
            mismatches += 1;
        }
    }
    (
        mismatches == 0,
        format!("{count} 3-row GF(5) frameworks ({feasible} feasible), 20 rounds, {mismatches} mismatches (tolerance 0)"),
    )
}

fn size_vectors(q: usize, max_sum: usize) -> Vec<Vec<usize>> {
    if q == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=max_sum {
        for mut rest in size_vectors(q - 1, max_sum - first) {
            if q == 1 || !rest.is_empty() {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out.retain(|v| v.len() == q);
    out
}

fn coverage() -> Verdict {
    let (mut hash_checked, mut sep_checked, mut failures) = (0, 0, 0);
    for n in 1..=10 {
        for l in 1..=n.min(4) {
            hash_checked += 1;
            if !perfect_hash_family(n, l).covers_all() {
                failures += 1;
            }
        }
        for q in 1..=3 {
            for sizes in size_vectors(q, n.min(4)) {
                sep_checked += 1;
                if !separation_family(n, &sizes).separates_all() {
                    failures += 1;
                }
            }
        }
    }
    (
        failures == 0,
        format!("{hash_checked} perfect hash and {sep_checked} separation families checked exhaustively, {failures} failures (tolerance 0)"),
    )
}

fn deterministic() -> Verdict {
    let mut rng = seeded(9, 0);
    let (mut mismatches, mut invalid, mut feasible) = (0, 0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let d = random_digraph(n, rng.gen_range(0.15..0.5), &mut rng);
        let p = rng.gen_range(1..=2);
        let k = rng.gen_range(0..=5);
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let t: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let best = longest_linkage_digraph(&d, &s, &t, p)
            .unwrap()
            .map(|ps| ps.iter().map(Vec::len).sum::<usize>());
        let expect = best.is_some_and(|b| b >= k);
        let got = solve_longest_linkage(&d, &s, &t, p, k).unwrap();
        if let Some(ps) = &got {
            if validate_directed_linkage(&d, &s, &t, p, k, ps).is_err() {
                invalid += 1;
            }
        }
        feasible += usize::from(expect);
        if got.is_some() != expect {
            mismatches += 1;
        }
    }
    (
        mismatches == 0 && invalid == 0,
        format!("200 digraphs ({feasible} feasible), {mismatches} verdict mismatches, {invalid} invalid linkages (tolerance 0)"),
    )
}

fn scaling() -> Verdict {
    let n = 40;
    let params = GenParams {
        n,
        k: 16,
        ..Default::default()
    };
    let (g, q16) = random_instance(&params, &mut seeded(10, 0));
    let field = build_core_field(n).unwrap();
    let ell = 20;
    let mut per_eval = Vec::new();
    for k in [14usize, 15] {
        let q = LinkageQuery::new(q16.sources.clone(), q16.sinks.clone(), 1, k, k as u64);
        let prob = problem(&g, &q);
        let mut rng = seeded(10, k as u64);
        let best = (0..3)
            .map(|_| {
                let a = VariableAssignment::random(&g, k, &field, &mut rng);
                let start = Instant::now();
                evaluate(&field, &prob, ell, &a, &EvalOptions::default()).unwrap();
                start.elapsed()
            })
            .min()
            .unwrap();
        per_eval.push(best.as_secs_f64());
    }
    let ratio = per_eval[1] / per_eval[0];
    let start = Instant::now();
    let report = solve_report(&g, &q16, &solver(10)).unwrap();
    let full = start.elapsed();
    let solved = report
        .solution
        .as_ref()
        .is_some_and(|s| validate_solution(&g, &q16, s).is_ok());
    (
        (RATIO_RANGE.0..=RATIO_RANGE.1).contains(&ratio) && full < FULL_SOLVE_LIMIT && solved,
        format!(
            "n = {n}, p = 1, l = {ell}: k=14 {:.3}s, k=15 {:.3}s per evaluation, ratio {ratio:.2} (need [{}, {}]); full solve k = 16 in {:.1}s with {} evaluations (limit {}s), validated: {solved}",
            per_eval[0],
            per_eval[1],
            RATIO_RANGE.0,
            RATIO_RANGE.1,
            full.as_secs_f64(),
            report.evaluations,
            FULL_SOLVE_LIMIT.as_secs()
        ),
    )
}

fn reductions() -> Verdict {
    let mut rng = seeded(11, 0);
    let mut mismatches = [0usize; 4];
    for i in 0..30u64 {
        let n = rng.gen_range(4..=7);
        let g = random_graph(n, rng.gen_range(2.0..3.5), 0, (1, 1), &mut rng);
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(&mut rng);
        let ts = &vs[..rng.gen_range(1..=4usize).min(n - 1)];
        let cfg = solver(i);

        let want = shortest_cycle_through(&g, ts, 3).unwrap();
        mismatches[0] += usize::from(t_cycle(&g, ts, &cfg).unwrap().map(|r| r.length) != want);

        let k = rng.gen_range(3..=n);
        let want = shortest_cycle_through(&g, ts, k).unwrap();
        mismatches[1] += usize::from(longest_t_cycle(&g, ts, k, &cfg).unwrap().map(|r| r.length) != want);

        let depot = vs[n - 1];
        let p = rng.gen_range(1..=2);
        let want = min_covering_flower(&g, depot, ts, p).unwrap();
        mismatches[2] += usize::from(vrp_flower(&g, depot, ts, p, &cfg).unwrap().map(|r| r.length) != want);

        let colored = random_graph(n, rng.gen_range(2.0..3.5), 3, (1, 1), &mut rng);
        let p = rng.gen_range(1..=2usize).min(n / 2);
        let (s, t) = (vs[..p].to_vec(), vs[p..2 * p].to_vec());
        let kc = rng.gen_range(0..=3);
        let ell = rng.gen_range(p..=n);
        let want = min_k_colored_at_least(&colored, &s, &t, p, kc, ell).unwrap();
        let got = longest_k_colored_linkage(&colored, &s, &t, p, kc, ell, &cfg).unwrap().map(|r| r.length);
        mismatches[3] += usize::from(got != want);
    }
    (
        mismatches.iter().all(|&m| m == 0),
        format!(
            "30 instances each: t-cycle {}, longest-t-cycle {}, vrp-flower {}, longest-k-colored {} mismatches (tolerance 0)",
            mismatches[0], mismatches[1], mismatches[2], mismatches[3]
        ),
    )
}

fn main() {
    let corpus = corpus();
    assert_eq!(corpus.len(), 50, "acceptance corpus must hold 50 instances");
    let mut failed = 0;
    let mut report = |id: usize, name: &str, (ok, detail): Verdict, took: Duration| {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {id:>2} {name}: {detail} ({:.1}s)", took.as_secs_f64());
        if !ok {
            failed += 1;
        }
    };
    let start = Instant::now();
    let (dp, cancel) = dp_and_cancellation(&corpus);
    let took = start.elapsed();
    report(1, "dp equals enumeration", dp, took);
    report(2, "cancellation", cancel, took);
    let timed = |f: &dyn Fn() -> Verdict| {
        let start = Instant::now();
        let v = f();
        (v, start.elapsed())
    };
    let (v, t) = timed(&|| nonvanishing(&corpus));
    report(3, "non-vanishing rate", v, t);
    let (v, t) = timed(&end_to_end);
    report(4, "end-to-end optimality", v, t);
    let (v, t) = timed(&|| degree_law(&corpus));
    report(5, "degree law", v, t);
    let (v, t) = timed(&truncation);
    report(6, "matroid truncation", v, t);
    let (v, t) = timed(&framework);
    report(7, "framework end-to-end", v, t);
    let (v, t) = timed(&coverage);
    report(8, "separation and perfect hash coverage", v, t);
    let (v, t) = timed(&deterministic);
    report(9, "deterministic longest linkage", v, t);
    let (v, t) = timed(&scaling);
    report(10, "scaling", v, t);
    let (v, t) = timed(&reductions);
    report(11, "reduction round-trips", v, t);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 11 acceptance criteria passed");
}
