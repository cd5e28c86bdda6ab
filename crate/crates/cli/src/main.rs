use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use colorlink::generate::{random_digraph, random_instance, GenParams};
use colorlink::graph::{load_instance, save_instance, Instance};
use colorlink::matroid::{
    framework_pipeline, FrameworkConfig, LinearMatroid, MatroidSource, RationalMatrixMatroid,
    TransversalInstance,
};
use colorlink::reductions::{self, Flower, Reduced};
use colorlink::rng::{entropy_seed, seeded};
use colorlink::solver::solve_report;
use colorlink::{det, oracle, ColoredWeightedGraph, Digraph, Error, LinkageQuery, LinkageSolution, SolverConfig};
use serde_json::{json, Map, Value};

const EXIT_FOUND: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "colorlink", version, about = "Colored and ranked (S,T)-linkage solvers")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Random seed; drawn from the OS and echoed when omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Fingerprint trials per candidate length.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    /// Trials per self-reduction step during recovery.
    #[arg(long, global = true)]
    recovery_trials: Option<usize>,
    /// Largest accepted target weight.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_w: u64,
    /// Worker threads for independent trials (0 = available parallelism).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-length (k,w)-colored (S,T)-linkage.
    Solve(InstanceArg),
    /// Minimum-length (k,w)-ranked linkage using the attached matroid.
    Framework {
        #[command(flatten)]
        input: InstanceArg,
        /// Truncation rounds.
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
    /// Shortest (s,t)-path with at least k vertices.
    LongestPath {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
    },
    /// Shortest cycle with at least max(k,3) vertices.
    LongestCycle {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: usize,
    },
    /// Shortest cycle through every terminal.
    TCycle {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
    },
    /// Shortest cycle through every terminal with at least max(k,3) vertices.
    LongestTCycle {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, value_delimiter = ',')]
        terminals: Vec<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Shortest p-petal flower through the depot covering the terminals.
    VrpFlower {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        depot: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
        #[arg(long)]
        p: usize,
    },
    /// Shortest p-petal flower collecting k clients of total profit w.
    VrpProfits {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        depot: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        w: u64,
    },
    /// Shortest k-colored linkage with at least ell vertices (S, T, p from the query).
    LongestKColored {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Deterministic directed linkage of total length at least k (S, T, p, k from the query).
    LongestLinkageDet(InstanceArg),
    /// Brute-force reference answers for small instances.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Random instance document.
    Gen(GenArgs),
    /// Runtime scaling of the colored solver over a range of k.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum OracleOp {
    /// Minimum colored linkage by enumeration.
    MinLinkage(InstanceArg),
    /// Longest directed linkage by enumeration.
    LongestDigraph(InstanceArg),
    /// Shortest cycle through every terminal by enumeration.
    TCycle {
        #[command(flatten)]
        input: InstanceArg,
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<usize>,
    },
}

#[derive(Args)]
struct InstanceArg {
    /// Instance document; standard input when omitted or `-`.
    path: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 3.0)]
    avg_degree: f64,
    /// Number of colors (0 = every vertex distinct).
    #[arg(long, default_value_t = 0)]
    colors: usize,
    #[arg(long, default_value_t = 1)]
    min_weight: u64,
    #[arg(long, default_value_t = 1)]
    max_weight: u64,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Skip planting a feasible linkage.
    #[arg(long)]
    unplanted: bool,
    /// Directed instance with arc probability `--prob`.
    #[arg(long)]
    directed: bool,
    #[arg(long, default_value_t = 0.3)]
    prob: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 40)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 10)]
    k_min: usize,
    #[arg(long, default_value_t = 14)]
    k_max: usize,
    #[arg(long, default_value_t = 3.0)]
    avg_degree: f64,
}

enum Outcome {
    Found(Map<String, Value>),
    Infeasible(Map<String, Value>),
}

fn read_instance(arg: &InstanceArg) -> anyhow::Result<Instance> {
    let bytes = match arg.path.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).context("reading standard input")?;
            buf
        }
    };
    Ok(load_instance(&bytes)?)
}

fn graph_of(inst: &Instance) -> anyhow::Result<&ColoredWeightedGraph> {
    inst.graph.as_ref().ok_or_else(|| anyhow!(Error::invalid("expected an undirected instance")))
}

fn query_of(inst: &Instance) -> anyhow::Result<&LinkageQuery> {
    inst.query.as_ref().ok_or_else(|| anyhow!(Error::invalid("instance has no query")))
}

fn solution_doc(sol: &LinkageSolution) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("length".into(), json!(sol.total_length));
    m.insert("paths".into(), json!(sol.paths));
    m.insert("certificate".into(), json!(sol.certificate));
    m
}

fn reduced<T, F>(r: Option<Reduced<T>>, answer: F) -> Outcome
where
    F: Fn(&T) -> Value,
{
    match r {
        None => Outcome::Infeasible(Map::new()),
        Some(r) => {
            let mut m = Map::new();
            m.insert("length".into(), json!(r.length));
            m.insert("answer".into(), answer(&r.answer));
            m.insert("construction".into(), json!(r.trace.construction));
            m.insert("linkage".into(), Value::Object(solution_doc(&r.trace.linkage)));
            Outcome::Found(m)
        }
    }
}

fn flower_doc(f: &Flower) -> Value {
    json!({"depot": f.depot, "petals": f.petals})
}

fn matroid_of(inst: &Instance) -> anyhow::Result<MatroidSource> {
    let n = inst.n();
    if let Some(doc) = &inst.matroid {
        return Ok(MatroidSource::Linear(LinearMatroid::from_doc(doc, n)?));
    }
    if let Some(doc) = &inst.transversal {
        return Ok(MatroidSource::Transversal(TransversalInstance::from_doc(doc, n)?));
    }
    if let Some(doc) = &inst.rational {
        return Ok(MatroidSource::Rational(RationalMatrixMatroid::from_doc(doc, n)?));
    }
    Err(anyhow!(Error::invalid("framework mode needs a matroid, transversal or rational block")))
}

fn run(cli: &Cli, seed: u64) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    let cfg = SolverConfig {
        trials_per_length: g.trials,
        recovery_trials: g.recovery_trials,
        max_w: g.max_w,
        threads: if g.threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            g.threads
        },
        ..SolverConfig::with_seed(seed)
    };
    let cycle = |c: &Vec<usize>| json!(c);
    Ok(match &cli.command {
        Command::Solve(input) => {
            let inst = read_instance(input)?;
            let report = solve_report(graph_of(&inst)?, query_of(&inst)?, &cfg)?;
            let mut extra = Map::new();
            extra.insert("evaluations".into(), json!(report.evaluations));
            match report.solution {
                Some(sol) => {
                    let mut m = solution_doc(&sol);
                    m.extend(extra);
                    Outcome::Found(m)
                }
                None => Outcome::Infeasible(extra),
            }
        }
        Command::Framework { input, rounds } => {
            let inst = read_instance(input)?;
            let source = matroid_of(&inst)?;
            let fc = FrameworkConfig {
                solver: cfg,
                rounds: *rounds,
            };
            match framework_pipeline(graph_of(&inst)?, &source, query_of(&inst)?, &fc)? {
                Some(sol) => Outcome::Found(solution_doc(&sol)),
                None => Outcome::Infeasible(Map::new()),
            }
        }
        Command::LongestPath { input, s, t, k } => {
            let inst = read_instance(input)?;
            reduced(reductions::longest_st_path(graph_of(&inst)?, *s, *t, *k, &cfg)?, cycle)
        }
        Command::LongestCycle { input, k } => {
            let inst = read_instance(input)?;
            reduced(reductions::longest_cycle(graph_of(&inst)?, *k, &cfg)?, cycle)
        }
        Command::TCycle { input, terminals } => {
            let inst = read_instance(input)?;
            reduced(reductions::t_cycle(graph_of(&inst)?, terminals, &cfg)?, cycle)
        }
        Command::LongestTCycle { input, terminals, k } => {
            let inst = read_instance(input)?;
            reduced(reductions::longest_t_cycle(graph_of(&inst)?, terminals, *k, &cfg)?, cycle)
        }
        Command::VrpFlower { input, depot, terminals, p } => {
            let inst = read_instance(input)?;
            reduced(reductions::vrp_flower(graph_of(&inst)?, *depot, terminals, *p, &cfg)?, flower_doc)
        }
        Command::VrpProfits { input, depot, p, k, w } => {
            let inst = read_instance(input)?;
            reduced(reductions::vrp_profits(graph_of(&inst)?, *depot, *p, *k, *w, &cfg)?, flower_doc)
        }
        Command::LongestKColored { input, k, ell } => {
            let inst = read_instance(input)?;
            let q = query_of(&inst)?;
            let r = reductions::longest_k_colored_linkage(graph_of(&inst)?, &q.sources, &q.sinks, q.p, *k, *ell, &cfg)?;
            reduced(r, |s: &LinkageSolution| json!(s.paths))
        }
        Command::LongestLinkageDet(input) => {
            let inst = read_instance(input)?;
            let d = directed_of(&inst)?;
            let q = query_of(&inst)?;
            match det::solve_with_case(d, &q.sources, &q.sinks, q.p, q.k)? {
                Some((paths, case)) => {
                    let mut m = Map::new();
                    m.insert("length".into(), json!(paths.iter().map(Vec::len).sum::<usize>()));
                    m.insert("paths".into(), json!(paths));
                    m.insert("case".into(), json!(format!("{case:?}").to_lowercase()));
                    Outcome::Found(m)
                }
                None => Outcome::Infeasible(Map::new()),
            }
        }
        Command::Oracle { op } => run_oracle(op)?,
        Command::Gen(_) => unreachable!("gen writes its document directly"),
        Command::Bench(args) => Outcome::Found(bench(args, &cfg)?),
    })
}

fn directed_of(inst: &Instance) -> anyhow::Result<&Digraph> {
    inst.digraph.as_ref().ok_or_else(|| anyhow!(Error::invalid("expected a directed instance")))
}

fn run_oracle(op: &OracleOp) -> anyhow::Result<Outcome> {
    let length_only = |best: Option<usize>| match best {
        Some(l) => {
            let mut m = Map::new();
            m.insert("length".into(), json!(l));
            Outcome::Found(m)
        }
        None => Outcome::Infeasible(Map::new()),
    };
    Ok(match op {
        OracleOp::MinLinkage(input) => {
            let inst = read_instance(input)?;
            match oracle::min_colored_linkage(graph_of(&inst)?, query_of(&inst)?)? {
                Some(opt) => {
                    let mut m = solution_doc(&opt.witnesses[0]);
                    m.insert("witnesses".into(), json!(opt.witnesses.len()));
                    Outcome::Found(m)
                }
                None => Outcome::Infeasible(Map::new()),
            }
        }
        OracleOp::LongestDigraph(input) => {
            let inst = read_instance(input)?;
            let q = query_of(&inst)?;
            match oracle::longest_linkage_digraph(directed_of(&inst)?, &q.sources, &q.sinks, q.p)? {
                Some(paths) => {
                    let mut m = Map::new();
                    m.insert("length".into(), json!(paths.iter().map(Vec::len).sum::<usize>()));
                    m.insert("paths".into(), json!(paths));
                    Outcome::Found(m)
                }
                None => Outcome::Infeasible(Map::new()),
            }
        }
        OracleOp::TCycle { input, terminals } => {
            let inst = read_instance(input)?;
            length_only(oracle::apps::shortest_cycle_through(graph_of(&inst)?, terminals, 3)?)
        }
    })
}

fn generate(args: &GenArgs, seed: u64) -> anyhow::Result<String> {
    let mut rng = seeded(seed, 0);
    let inst = if args.directed {
        if args.n == 0 {
            bail!(Error::invalid("--n must be positive"));
        }
        let d = random_digraph(args.n, args.prob, &mut rng);
        let q = LinkageQuery::new(vec![0], vec![args.n - 1], args.p, args.k, args.k as u64);
        Instance::directed(d, Some(q))
    } else {
        if args.k > args.n || args.p == 0 || args.p > args.n || args.min_weight == 0 || args.min_weight > args.max_weight {
            bail!(Error::invalid("gen: need 1 <= p <= n, k <= n and 1 <= min-weight <= max-weight"));
        }
        let params = GenParams {
            n: args.n,
            avg_degree: args.avg_degree,
            colors: args.colors,
            min_weight: args.min_weight,
            max_weight: args.max_weight,
            p: args.p,
            k: args.k,
            planted: !args.unplanted,
        };
        let (g, q) = random_instance(&params, &mut rng);
        Instance::undirected(g, Some(q))
    };
    Ok(save_instance(&inst))
}

fn bench(args: &BenchArgs, cfg: &SolverConfig) -> anyhow::Result<Map<String, Value>> {
    if args.k_min > args.k_max || args.k_max > args.n {
        bail!(Error::invalid("bench: need k-min <= k-max <= n"));
    }
    let mut rows = Vec::new();
    let mut prev: Option<f64> = None;
    for k in args.k_min..=args.k_max {
        let params = GenParams {
            n: args.n,
            avg_degree: args.avg_degree,
            p: args.p,
            k,
            ..Default::default()
        };
        let (g, q) = random_instance(&params, &mut seeded(cfg.seed, k as u64));
        let start = Instant::now();
        let report = solve_report(&g, &q, cfg)?;
        let secs = start.elapsed().as_secs_f64();
        let per_eval = secs / report.evaluations.max(1) as f64;
        rows.push(json!({
            "k": k,
            "seconds": secs,
            "evaluations": report.evaluations,
            "seconds_per_evaluation": per_eval,
            "ratio_to_previous": prev.map(|p| per_eval / p),
            "length": report.solution.map(|s| s.total_length),
        }));
        prev = Some(per_eval);
    }
    let mut m = Map::new();
    m.insert("n".into(), json!(args.n));
    m.insert("p".into(), json!(args.p));
    m.insert("rows".into(), Value::Array(rows));
    Ok(m)
}

fn emit(format: Format, doc: &Map<String, Value>) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(doc).expect("documents serialize")),
        Format::Plain => {
            for (k, v) in doc {
                println!("{k}: {v}");
            }
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidInstance(_) | Error::Parse { .. } | Error::WeightCap { .. } | Error::OracleGuard(_)) => EXIT_USAGE,
        Some(_) => EXIT_INTERNAL,
        None if err.downcast_ref::<std::io::Error>().is_some() => EXIT_USAGE,
        None => EXIT_INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.global.seed.unwrap_or_else(entropy_seed);
    if let Command::Gen(args) = &cli.command {
        return match generate(args, seed) {
            Ok(text) => {
                print!("{text}");
                eprintln!("seed: {seed}");
                ExitCode::from(EXIT_FOUND)
            }
            Err(err) => {
                eprintln!("error: {err:#}");
                ExitCode::from(exit_code_for(&err))
            }
        };
    }
    let (code, mut doc) = match run(&cli, seed) {
        Ok(Outcome::Found(m)) => (EXIT_FOUND, m),
        Ok(Outcome::Infeasible(m)) => (EXIT_INFEASIBLE, m),
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(exit_code_for(&err));
        }
    };
    let status = if code == EXIT_FOUND { "found" } else { "infeasible" };
    let mut out = Map::new();
    out.insert("seed".into(), json!(seed));
    out.insert("status".into(), json!(status));
    out.append(&mut doc);
    emit(cli.global.format, &out);
    ExitCode::from(code)
}
