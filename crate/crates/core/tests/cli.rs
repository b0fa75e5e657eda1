//! The `turan` binary end to end: emitted graphs re-read, files as patterns,
//! ledger reuse, exit codes and the CSV comparison table.

use std::path::Path;
use std::process::Command;

use serde_json::Value;
use turan_core::extremal::{z_exact, Budget};
use turan_core::families::{cycle, FamilyName, FamilySpec};
use turan_core::graph6;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn turan(args: &[&str]) -> Run {
    let o = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(args)
        .env_remove("TURAN_LEDGER")
        .output()
        .expect("binary runs");
    Run {
        code: o.status.code().expect("exit code"),
        out: String::from_utf8(o.stdout).unwrap(),
        err: String::from_utf8(o.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = turan(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.err);
    r.out
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FAMILIES: &[&[&str]] = &[
    &["--name", "theta", "--k", "3", "--p", "3"],
    &["--name", "cycle", "--len", "7"],
    &["--name", "complete_bipartite", "--s", "2", "--t", "5"],
    &["--name", "gen_cube", "--s", "2", "--t", "3"],
    &["--name", "double_star", "--s", "3"],
    &["--name", "comb3"],
    &["--name", "pasting", "--p", "3"],
    &["--name", "pasting", "--s", "2", "--p", "2"],
    &["--name", "L_t", "--k", "3", "--p", "2", "--t", "3"],
    &["--name", "spider", "--p", "3", "--len", "2"],
];

#[test]
fn emitted_graphs_read_back() {
    let dir = tempfile::tempdir().unwrap();
    for (i, fam) in FAMILIES.iter().enumerate() {
        let mut args = vec!["family"];
        args.extend_from_slice(fam);
        let meta = json(&args);
        let g6 = meta["graph6"].as_str().unwrap().to_string();
        let mut a6 = args.clone();
        a6.extend(["--format", "graph6"]);
        let text6 = ok(&a6);
        assert_eq!(text6.trim(), g6);
        let mut ae = args.clone();
        ae.extend(["--format", "edges"]);
        let text_e = ok(&ae);
        let g = graph6::decode(&g6).unwrap();
        assert_eq!(meta["edges"], g.edge_count());
        // the library builds the same labelled graph
        let name: FamilyName = meta["name"].as_str().unwrap().parse().unwrap();
        let params: Vec<(&str, usize)> = ["s", "t", "k", "p", "len"]
            .into_iter()
            .filter_map(|k| meta[k].as_u64().map(|v| (k, v as usize)))
            .collect();
        assert_eq!(FamilySpec::new(name, &params).build().unwrap().edges(), g.edges());
        let f6 = write(dir.path(), &format!("g{i}.g6"), &text6);
        let fe = write(dir.path(), &format!("g{i}.txt"), &text_e);
        // each emitted form is accepted as host and as pattern
        for (host, pat) in [(&f6, &fe), (&fe, &f6), (&f6, &g6)] {
            let r = json(&["contains", "--host", host, "--pattern", pat]);
            assert_eq!(r["present"], true, "{fam:?}");
        }
        if g.order() <= turan_core::pattern::COUNT_PATTERN_CAP {
            let c = json(&["count", "--host", &fe, "--pattern", &g6]);
            assert_eq!(c["copies"], 1, "{fam:?}");
        }
    }
}

#[test]
fn witnesses_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let w = ok(&["ex", "--pattern", "c4", "--n", "7", "--format", "graph6"]);
    let wf = write(dir.path(), "w.g6", &w);
    assert_eq!(graph6::decode(w.trim()).unwrap().edge_count(), 9);
    assert_eq!(json(&["contains", "--host", &wf, "--pattern", "c4"])["present"], false);
    let we = ok(&["z", "--pattern", "c6", "--m", "3", "--n", "4", "--format", "edges"]);
    let wef = write(dir.path(), "w.txt", &we);
    let r = json(&["count", "--host", &wef, "--pattern", "c6"]);
    assert_eq!(r["copies"], 0);
    let rep = json(&["verify", "--lemma", "maxcut", "--graph", &wef]);
    assert_eq!((rep["details"]["input_edges"].as_u64(), rep["holds"].as_bool()), (Some(9), Some(true)));
}

#[test]
fn pattern_files() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.g6", &format!("{}\n", graph6::encode(&cycle(4).unwrap())));
    let r = json(&["ex", "--pattern", &c4, "--n", "5"]);
    assert_eq!((r["value"].as_u64(), r["mode"].as_str()), (Some(6), Some("exact")));
    let edges = write(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let r = json(&["z", "--pattern", &edges, "--m", "4", "--n", "4"]);
    assert_eq!(r["value"], 9);
    // a family of two patterns
    let r = json(&["ex", "--pattern", &c4, "--pattern", "k3", "--n", "6"]);
    assert_eq!(r["value"], 6);
}

#[test]
fn ledger_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ledger.jsonl");
    let l = path.to_str().unwrap();
    let args = ["--ledger", l, "--reproducible", "ex", "--pattern", "q8", "--n", "8"];
    let first = turan(&args);
    assert_eq!(first.code, 0, "{}", first.err);
    let bytes = std::fs::read(&path).unwrap();
    let second = turan(&args);
    assert_eq!(second.code, 0);
    assert_eq!(second.out, first.out);
    assert!(second.err.contains("stored exact record"), "{}", second.err);
    assert_eq!(std::fs::read(&path).unwrap(), bytes);
    let lines: Vec<Value> =
        String::from_utf8(bytes).unwrap().lines().map(|s| serde_json::from_str(s).unwrap()).collect();
    assert_eq!(lines.len(), 1);
    assert_eq!((lines[0]["value"].as_u64(), lines[0]["millis"].as_u64()), (Some(23), Some(0)));
    // the environment variable names the same ledger
    let o = Command::new(env!("CARGO_BIN_EXE_turan"))
        .args(["ex", "--pattern", "q8", "--n", "8"])
        .env("TURAN_LEDGER", l)
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stderr).unwrap().contains("stored exact record"));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), first.out);
}

#[test]
fn exit_codes() {
    assert_eq!(turan(&[]).code, 3);
    assert_eq!(turan(&["ex", "--n", "5"]).code, 3);
    assert_eq!(turan(&["ex", "--pattern", "c4", "--n", "five"]).code, 3);
    assert_eq!(turan(&["verify", "--lemma", "nope", "--graph", "c4"]).code, 3);
    // edgeless pattern and an unknown graph are domain errors
    assert_eq!(turan(&["ex", "--pattern", "k1", "--n", "4"]).code, 1);
    assert_eq!(turan(&["contains", "--host", "no-such-graph", "--pattern", "c4"]).code, 1);
    assert_eq!(turan(&["ex", "--pattern", "c4", "--n", "30"]).code, 1);
    let r = turan(&["ex", "--pattern", "c4", "--n", "10", "--max-nodes", "20"]);
    assert_eq!(r.code, 2);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["mode"], "lower");
    let r = turan(&["compare", "--name", "NV_cycle", "--k", "2", "--orders", "5x5", "--max-nodes", "3"]);
    assert_eq!(r.code, 2);
    let rows: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(rows[0]["exact"], Value::Null);
    assert_eq!(turan(&["--help"]).code, 0);
}

#[test]
fn compare_csv() {
    let out = ok(&["--format", "csv", "compare", "--name", "NV_cycle", "--k", "2", "--max", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "orders,exact,bound,ratio");
    assert_eq!(lines.len(), 1 + 10);
    let c4 = cycle(4).unwrap();
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 4);
        let mn: Vec<usize> = cols[0].split('x').map(|x| x.parse().unwrap()).collect();
        let exact: usize = cols[1].parse().unwrap();
        assert_eq!(exact, z_exact(mn[0], mn[1], &c4, &Budget::default()).unwrap().value);
        let bound: f64 = cols[2].parse().unwrap();
        assert!(exact as f64 <= bound);
    }
    let out = ok(&["--format", "csv", "compare", "--name", "furedi_cube", "--orders", "8"]);
    assert!(out.lines().nth(1).unwrap().starts_with("8,23,"));
}

#[test]
fn verifiers_run() {
    let cases: &[&[&str]] = &[
        &["--lemma", "maxcut", "--graph", "k5"],
        &["--lemma", "mindeg", "--graph", "k5"],
        &["--lemma", "bipprune", "--graph", "k-3-4"],
        &["--lemma", "almostreg", "--graph", "k5", "--lambda", "3/2"],
        &["--lemma", "match-count", "--graph", "k-4-4", "--t", "2"],
        &["--lemma", "h1t-count", "--graph", "k-4-4", "--t", "1"],
        &["--lemma", "correlated", "--graph", "c6", "--s", "2", "--t", "2"],
        &["--lemma", "treelayer", "--graph", "q8", "--root", "0", "--depth", "1", "--k", "3", "--p", "2"],
        &["--lemma", "comb", "--graph", "q8", "--p", "2"],
    ];
    for case in cases {
        let mut args = vec!["verify"];
        args.extend_from_slice(case);
        let r = json(&args);
        assert_ne!(r["holds"], false, "{case:?}");
        assert!(r["precondition_met"].is_boolean() && r["hypothesis_met"].is_boolean());
    }
    let audit = json(&["verify", "--lemma", "cube-audit", "--graph", "c6", "--s", "2", "--t", "2"]);
    assert_eq!(audit["claim2_bound"], 108);
    let bfs = json(&["verify", "--lemma", "bfs", "--graph", "q8", "--root", "0", "--k", "3", "--p", "2"]);
    assert_eq!(bfs["layers"], serde_json::json!([1, 3, 3, 1]));
    let rep = json(&["bfs-report", "--graph", "c6", "--root", "0", "--k", "3", "--p", "2"]);
    assert_eq!(rep["layers"], serde_json::json!([1, 2, 2, 1]));
    let b = json(&["bound", "--name", "theta3p", "--p", "2", "--m", "8", "--n", "8"]);
    assert_eq!(b["exact"], 36864);
    let d = json(&["balanced", "--tree", "comb3"]);
    assert_eq!((d["rho_t"].as_str(), d["exponent"].as_str()), (Some("5/3"), Some("7/5")));
}
