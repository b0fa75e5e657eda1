//! Command-line front end. [`run`] parses arguments, dispatches and writes
//! results to `out` and diagnostics to `err`; the return value is the exit
//! status: 0 success, 1 domain error or failed check, 2 search budget
//! exhausted, 3 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{compare_exact_vs_bound, eval_bound, BoundName, BoundSpec, COMPARE_HEADER};
use crate::density::{format_ratio, is_balanced, Rational, RootedTree};
use crate::error::{Error, Result};
use crate::extremal::{
    ex_exact_family, ex_lower, family_key, oracle_ex_bruteforce, oracle_z_bruteforce, z_exact_family, z_lower, Budget,
    ExtremalResult, Ledger, LedgerKey, Mode,
};
use crate::families::{
    comb3, comb_pasting, complete, complete_bipartite, cycle, double_star, gen_cube, l3_theta, path, spider, star,
    theta, FamilyName, FamilySpec,
};
use crate::graph::{BipGraph, Graph};
use crate::graph6;
use crate::lemmas::{
    bfs_layer_report, comb_decompose_verify, construct_report, cube_proof_audit, verify_correlated, verify_h1t_count,
    verify_matching_count, verify_treelayer, TreeLayer, VerifierReport,
};
use crate::pattern::{automorphism_count, contains, count_copies, count_embeddings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "turan", version, about = "Exact Turán numbers, graph families and lemma verifiers")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock limit in seconds for searches.
    #[arg(long, global = true)]
    pub timeout: Option<f64>,
    /// Node limit for searches (deterministic, unlike --timeout).
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Ledger file; defaults to $TURAN_LEDGER.
    #[arg(long, global = true)]
    pub ledger: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write millis = 0 to the ledger.
    #[arg(long, global = true)]
    pub reproducible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Graph6,
    /// Plain edge list: "n m" then one "u v" line per edge.
    Edges,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named family member.
    Family(FamilyArgs),
    /// Density report of a rooted tree.
    Balanced(BalancedArgs),
    /// Find one copy of a pattern in a host.
    Contains(PairArgs),
    /// Count embeddings and copies of a pattern in a host.
    Count(PairArgs),
    /// ex(n, patterns).
    Ex(ExArgs),
    /// z(m, n, patterns).
    Z(ZArgs),
    /// Brute-force value for tiny orders.
    Oracle(OracleArgs),
    /// Run a lemma verifier on a graph.
    Verify(VerifyArgs),
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Exact values against a bound, as CSV.
    Compare(CompareArgs),
    /// BFS level growth report.
    BfsReport(BfsArgs),
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub len: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BalancedArgs {
    /// comb3, double-star-S, spider-P-LEN, pendant-star, or an edge-list or
    /// graph6 file.
    #[arg(long)]
    pub tree: String,
    /// Comma-separated root vertices (required for files).
    #[arg(long)]
    pub roots: Option<String>,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub host: String,
    #[arg(long)]
    pub pattern: String,
}

#[derive(Args, Debug)]
pub struct ExArgs {
    /// Forbidden pattern; repeat for a family.
    #[arg(long, required = true)]
    pub pattern: Vec<String>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "exact")]
    pub mode: Mode,
    /// Lift the order caps of the exact search.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug)]
pub struct ZArgs {
    #[arg(long, required = true)]
    pub pattern: Vec<String>,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "exact")]
    pub mode: Mode,
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, required = true)]
    pub pattern: Vec<String>,
    #[arg(long)]
    pub n: usize,
    /// First part size; gives z(m, n) instead of ex(n).
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// maxcut, mindeg, bipprune, almostreg, match-count, h1t-count,
    /// correlated, cube-audit, treelayer, bfs or comb.
    #[arg(long)]
    pub lemma: String,
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Tree height for treelayer.
    #[arg(long, default_value_t = 1)]
    pub depth: usize,
    /// λ for almostreg, as an integer or a/b.
    #[arg(long, default_value = "2")]
    pub lambda: String,
}

#[derive(Args, Debug, Clone)]
pub struct BoundParams {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Caller-supplied constant for Hst and generic_power.
    #[arg(long)]
    pub c: Option<f64>,
    /// ρ for generic_power, as a/b.
    #[arg(long)]
    pub rho: Option<String>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub params: BoundParams,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub params: BoundParams,
    /// Orders such as "3x3,3x4" for z bounds or "5,6,7" for ex bounds.
    #[arg(long, conflicts_with = "max")]
    pub orders: Option<String>,
    /// All orders up to this size: n ≤ max, or 1 ≤ m ≤ n ≤ max.
    #[arg(long)]
    pub max: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BfsArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: usize,
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// What a command produced, in every representation it supports.
struct Output {
    json: Value,
    graph: Option<Graph>,
    csv: Option<String>,
    status: i32,
    note: Option<String>,
}

impl Output {
    fn json(v: impl Serialize) -> std::result::Result<Self, Failure> {
        Ok(Output {
            json: to_value(v)?,
            graph: None,
            csv: None,
            status: EXIT_OK,
            note: None,
        })
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => match render(&o, cli.global.format) {
            Ok(text) => {
                let _ = writeln!(out, "{text}");
                if let Some(n) = &o.note {
                    let _ = writeln!(err, "{n}");
                }
                o.status
            }
            Err(msg) => {
                let _ = writeln!(err, "error: {msg}");
                EXIT_USAGE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn render(o: &Output, format: Format) -> std::result::Result<String, String> {
    match format {
        Format::Json => Ok(o.json.to_string()),
        Format::Graph6 => o.graph.as_ref().map(graph6::encode).ok_or_else(|| "this command has no graph6 output".into()),
        Format::Edges => o
            .graph
            .as_ref()
            .map(|g| g.to_edge_list().trim_end().to_string())
            .ok_or_else(|| "this command has no edge-list output".into()),
        Format::Csv => o.csv.clone().ok_or_else(|| "this command has no CSV output".into()),
    }
}

fn dispatch(cli: &Cli) -> std::result::Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Family(a) => family(a),
        Command::Balanced(a) => balanced(a),
        Command::Contains(a) => {
            let (host, h) = (resolve_graph(&a.host)?, resolve_graph(&a.pattern)?);
            let e = contains(&host, &h);
            let pairs: Option<Vec<String>> =
                e.as_ref().map(|e| e.map.iter().enumerate().map(|(p, v)| format!("{p}→{v}")).collect());
            let mut o = Output::json(json!({ "present": e.is_some(), "embedding": pairs }))?;
            o.csv = Some(format!("present,embedding\n{},{}", e.is_some(), pairs.map_or(String::new(), |p| p.join(" "))));
            Ok(o)
        }
        Command::Count(a) => {
            let (host, h) = (resolve_graph(&a.host)?, resolve_graph(&a.pattern)?);
            let emb = count_embeddings(&host, &h)?;
            let aut = automorphism_count(&h)?;
            let copies = count_copies(&host, &h)?;
            let mut o = Output::json(json!({ "embeddings": emb, "automorphisms": aut, "copies": copies }))?;
            o.csv = Some(format!("embeddings,automorphisms,copies\n{emb},{aut},{copies}"));
            Ok(o)
        }
        Command::Ex(a) => {
            let pats = resolve_all(&a.pattern)?;
            extremal(g, &pats, vec![a.n], a.mode, a.allow_large)
        }
        Command::Z(a) => {
            let pats = resolve_all(&a.pattern)?;
            extremal(g, &pats, vec![a.m, a.n], a.mode, a.allow_large)
        }
        Command::Oracle(a) => {
            let pats = resolve_all(&a.pattern)?;
            let (orders, value) = match a.m {
                Some(m) => (vec![m, a.n], oracle_z_bruteforce(m, a.n, &pats)?),
                None => (vec![a.n], oracle_ex_bruteforce(a.n, &pats)?),
            };
            let key = family_key(&pats)?;
            let mut o = Output::json(json!({ "pattern_g6": key, "orders": orders, "value": value }))?;
            o.csv = Some(format!("orders,value\n{},{value}", join_orders(&orders)));
            Ok(o)
        }
        Command::Verify(a) => verify(a),
        Command::Bound(a) => {
            let mut spec = bound_spec(&a.params)?;
            for (key, v) in [("m", a.m), ("n", a.n)] {
                if let Some(v) = v {
                    spec.params.insert(key.into(), v);
                }
            }
            let v = eval_bound(&spec)?;
            let mut o = Output::json(&v)?;
            o.csv = Some(format!(
                "name,value,exact,conditional\n{},{},{},{}",
                v.name,
                crate::bounds::sig6(v.value),
                v.exact.map_or(String::new(), |e| e.to_string()),
                v.conditional
            ));
            Ok(o)
        }
        Command::Compare(a) => compare(g, a),
        Command::BfsReport(a) => {
            let bg = BipGraph::from_graph(resolve_graph(&a.graph)?)?;
            let r = bfs_layer_report(&bg, a.root, a.k, a.p)?;
            let mut o = Output::json(&r)?;
            if !r.is_consistent() {
                o.status = EXIT_DOMAIN;
                o.note = Some("growth inequality failed on a flagged level".into());
            }
            Ok(o)
        }
    }
}

fn join_orders(o: &[usize]) -> String {
    o.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
}

fn budget(g: &Global, allow_large: bool) -> Budget {
    let mut b = Budget::default().with_seed(g.seed).with_threads(g.threads);
    if let Some(t) = g.timeout {
        b = b.with_timeout(Duration::from_secs_f64(t.max(0.0)));
    }
    if let Some(n) = g.max_nodes {
        b = b.with_max_nodes(n);
    }
    b.allow_large = allow_large;
    b
}

fn ledger(g: &Global) -> Option<Ledger> {
    g.ledger
        .clone()
        .or_else(|| std::env::var_os("TURAN_LEDGER").map(PathBuf::from))
        .map(|p| Ledger::new(p).reproducible(g.reproducible))
}

fn record_output(r: &ExtremalResult) -> std::result::Result<Output, Failure> {
    // wall time is not reproducible, so it is kept out of the output stream
    let mut shown = r.clone();
    shown.millis = 0;
    let mut o = Output::json(&shown)?;
    o.graph = Some(r.witness()?);
    o.csv = Some(format!(
        "pattern_g6,orders,value,mode,witness_g6\n\"{}\",{},{},{},{}",
        r.pattern_g6,
        join_orders(&r.orders),
        r.value,
        r.mode,
        r.witness_g6
    ));
    Ok(o)
}

fn extremal(g: &Global, pats: &[Graph], orders: Vec<usize>, mode: Mode, allow_large: bool) -> std::result::Result<Output, Failure> {
    let store = ledger(g);
    let key = LedgerKey {
        pattern_g6: family_key(pats)?,
        orders: orders.clone(),
    };
    if let Some(l) = &store {
        let stored = l.load()?.into_iter().find(|r| r.mode == Mode::Exact && LedgerKey::of(r) == key);
        if let Some(r) = stored {
            let mut o = record_output(&r)?;
            o.note = Some("stored exact record".into());
            return Ok(o);
        }
    }
    let b = budget(g, allow_large);
    let r = match (mode, &orders[..]) {
        (Mode::Exact, &[n]) => ex_exact_family(n, pats, &b)?,
        (Mode::Exact, &[m, n]) => z_exact_family(m, n, pats, &b)?,
        (Mode::Lower, &[n]) => ex_lower(n, pats, &b)?,
        (Mode::Lower, &[m, n]) => z_lower(m, n, pats, &b)?,
        _ => unreachable!("orders have one or two entries"),
    };
    if let Some(l) = &store {
        l.record(&r, pats)?;
    }
    let mut o = record_output(&r)?;
    let mut note = format!("nodes {} prunes {} elapsed {} ms", r.nodes, r.prunes, r.millis);
    if mode == Mode::Exact && r.mode == Mode::Lower {
        o.status = EXIT_BUDGET;
        note.push_str("; budget exhausted, value is a lower bound");
    }
    o.note = Some(note);
    Ok(o)
}

fn family(a: &FamilyArgs) -> std::result::Result<Output, Failure> {
    let name: FamilyName = a.name.parse()?;
    let params: Vec<(&str, usize)> = [("s", a.s), ("t", a.t), ("k", a.k), ("p", a.p), ("len", a.len)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    let spec = FamilySpec::new(name, &params);
    let g = spec.build()?;
    let mut v = to_value(&spec)?;
    v["graph6"] = json!(graph6::encode(&g));
    v["order"] = json!(g.order());
    v["edges"] = json!(g.edge_count());
    let mut o = Output::json(v)?;
    o.graph = Some(g);
    Ok(o)
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad vertex list {s:?}"))))
        .collect()
}

fn named_tree(name: &str) -> Result<Option<RootedTree>> {
    let nums = |rest: &str| -> Option<Vec<usize>> { rest.split('-').map(|x| x.parse().ok()).collect() };
    Ok(if name == "comb3" {
        Some(comb3())
    } else if name == "pendant-star" {
        // centre 0, roots 1..3, pendant path 0–4
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])?;
        Some(RootedTree::new(g, &[1, 2, 3])?)
    } else if let Some(v) = name.strip_prefix("double-star-").and_then(nums) {
        match v[..] {
            [s] => Some(double_star(s)?),
            _ => None,
        }
    } else if let Some(v) = name.strip_prefix("spider-").and_then(nums) {
        match v[..] {
            [p, len] => Some(spider(p, len)?),
            _ => None,
        }
    } else {
        None
    })
}

fn balanced(a: &BalancedArgs) -> std::result::Result<Output, Failure> {
    let tree = match named_tree(&a.tree)? {
        Some(t) => t,
        None => {
            let g = read_graph_file(Path::new(&a.tree))
                .ok_or_else(|| Failure::Usage(format!("unknown tree {:?}", a.tree)))??;
            let roots = a.roots.as_deref().ok_or_else(|| Failure::Usage("--roots is required for a tree file".into()))?;
            RootedTree::new(g, &parse_list(roots)?)?
        }
    };
    let r = is_balanced(&tree)?;
    let mut v = to_value(&r)?;
    v["rho"] = json!(format_ratio(&r.rho_t));
    let mut o = Output::json(v)?;
    o.graph = Some(tree.tree().clone());
    Ok(o)
}

fn need(v: Option<usize>, name: &str) -> std::result::Result<usize, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this lemma")))
}

fn parse_ratio(s: &str) -> std::result::Result<Rational, Failure> {
    let bad = || Failure::Usage(format!("bad ratio {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn verify(a: &VerifyArgs) -> std::result::Result<Output, Failure> {
    let g = resolve_graph(&a.graph)?;
    let bip = || BipGraph::from_graph(g.clone());
    let report: VerifierReport = match a.lemma.as_str() {
        "maxcut" | "mindeg" | "bipprune" | "almostreg" => construct_report(&a.lemma, &g, parse_ratio(&a.lambda)?)?,
        "match-count" => verify_matching_count(&bip()?, need(a.t, "t")?)?,
        "h1t-count" => verify_h1t_count(&bip()?, need(a.t, "t")?)?,
        "correlated" => verify_correlated(&bip()?, need(a.s, "s")?, need(a.t, "t")?)?,
        "cube-audit" => return Output::json(cube_proof_audit(&bip()?, need(a.s, "s")?, need(a.t, "t")?)?),
        "treelayer" => {
            let layer = TreeLayer::from_bfs(&g, a.root, a.depth)?;
            verify_treelayer(&layer, need(a.k, "k")?, need(a.p, "p")?)?
        }
        "bfs" => {
            let r = bfs_layer_report(&bip()?, a.root, need(a.k, "k")?, need(a.p, "p")?)?;
            let mut o = Output::json(&r)?;
            if !r.is_consistent() {
                o.status = EXIT_DOMAIN;
            }
            return Ok(o);
        }
        "comb" => comb_decompose_verify(&g, need(a.p, "p")?)?,
        other => return Err(Failure::Usage(format!("unknown lemma {other:?}"))),
    };
    let mut o = Output::json(&report)?;
    if report.holds == Some(false) {
        o.status = EXIT_DOMAIN;
        o.note = Some(format!("{} check failed", report.lemma));
    }
    Ok(o)
}

fn bound_spec(p: &BoundParams) -> std::result::Result<BoundSpec, Failure> {
    let name: BoundName = p.name.parse()?;
    let params: Vec<(&str, u64)> = [("s", p.s), ("t", p.t), ("k", p.k), ("p", p.p)]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
    let mut spec = BoundSpec::new(name, &params);
    if let Some(c) = p.c {
        spec = spec.with_constant(c);
    }
    if let Some(r) = &p.rho {
        let r = parse_ratio(r)?;
        if *r.numer() <= 0 || *r.denom() <= 0 {
            return Err(Failure::Usage("rho must be positive".into()));
        }
        spec.params.insert("rho_num".into(), *r.numer() as u64);
        spec.params.insert("rho_den".into(), *r.denom() as u64);
    }
    Ok(spec)
}

fn compare(g: &Global, a: &CompareArgs) -> std::result::Result<Output, Failure> {
    let spec = bound_spec(&a.params)?;
    let orders: Vec<Vec<usize>> = match (&a.orders, a.max) {
        (Some(text), _) => text
            .split(',')
            .map(|o| {
                o.split('x')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad order {o:?}"))))
                    .collect()
            })
            .collect::<std::result::Result<_, _>>()?,
        (None, Some(max)) if spec.name.bipartite() => {
            (1..=max).flat_map(|m| (m..=max).map(move |n| vec![m, n])).collect()
        }
        (None, Some(max)) => (1..=max).map(|n| vec![n]).collect(),
        (None, None) => return Err(Failure::Usage("give --orders or --max".into())),
    };
    let store = ledger(g);
    let rows = compare_exact_vs_bound(&spec, &orders, store.as_ref(), &budget(g, false))?;
    let mut csv = vec![COMPARE_HEADER.to_string()];
    csv.extend(rows.iter().map(|r| r.csv()));
    let mut o = Output::json(&rows)?;
    o.csv = Some(csv.join("\n"));
    if rows.iter().any(|r| r.violation) {
        o.status = EXIT_DOMAIN;
        o.note = Some("an exact value exceeds the bound".into());
    } else if rows.iter().any(|r| r.incomplete()) {
        o.status = EXIT_BUDGET;
        o.note = Some("budget exhausted on some rows".into());
    }
    Ok(o)
}

fn resolve_all(specs: &[String]) -> Result<Vec<Graph>> {
    specs.iter().map(|s| resolve_graph(s)).collect()
}

fn shortcut(name: &str) -> Result<Option<Graph>> {
    let lower = name.to_ascii_lowercase();
    let nums = |prefix: &str| -> Option<Vec<usize>> {
        let rest = lower.strip_prefix(prefix)?;
        rest.split('-').map(|x| x.parse().ok()).collect()
    };
    let bare = |prefix: &str| -> Option<usize> { lower.strip_prefix(prefix)?.parse().ok() };
    if lower == "q8" {
        return Ok(Some(gen_cube(2, 2)?.into_graph()));
    }
    if lower == "k13" {
        return Ok(Some(star(3)));
    }
    let g = if let Some([k, p]) = nums("theta-").as_deref() {
        theta(*k, *p)?.into_graph()
    } else if let Some([s, t]) = nums("h-").as_deref() {
        gen_cube(*s, *t)?.into_graph()
    } else if let Some([p]) = nums("s-").as_deref() {
        comb_pasting(*p)?
    } else if let Some([p]) = nums("l3theta-").as_deref() {
        l3_theta(*p)?
    } else if let Some([s, t]) = nums("k-").as_deref() {
        complete_bipartite(*s, *t).into_graph()
    } else if let Some(n) = bare("c") {
        cycle(n)?
    } else if let Some(n) = bare("k") {
        complete(n)
    } else if let Some(n) = bare("p") {
        path(n)
    } else {
        return Ok(None);
    };
    Ok(Some(g))
}

/// Reads a graph6 or edge-list file; `None` if there is no such file.
fn read_graph_file(path: &Path) -> Option<Result<Graph>> {
    if !path.is_file() {
        return None;
    }
    Some(std::fs::read_to_string(path).map_err(Error::from).and_then(|text| parse_graph_text(&text)))
}

fn parse_graph_text(text: &str) -> Result<Graph> {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim();
    if first.split_whitespace().count() == 2 && first.split_whitespace().all(|x| x.parse::<usize>().is_ok()) {
        Graph::from_edge_list(text)
    } else {
        graph6::decode(first)
    }
}

/// A named shortcut (c4, c6, c{n}, q8, k13, k{n}, p{n}, theta-k-p, h-s-t,
/// s-p, l3theta-p, k-s-t), else a graph6 or edge-list file, else a graph6
/// string.
pub fn resolve_graph(spec: &str) -> Result<Graph> {
    if let Some(g) = shortcut(spec)? {
        return Ok(g);
    }
    if let Some(g) = read_graph_file(Path::new(spec)) {
        return g;
    }
    graph6::decode(spec.trim())
}
