use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn mesp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mesp")).args(args).output().expect("binary runs")
}

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn edge_list(n: usize, edges: &[(usize, usize)]) -> NamedTempFile {
    let mut s = format!("{n} {}\n", edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    graph_file(&s)
}

fn cycle(n: usize) -> NamedTempFile {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edge_list(n, &e)
}

fn path(n: usize) -> NamedTempFile {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edge_list(n, &e)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn p(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn c6_within_one() {
    let f = cycle(6);
    let out = mesp(&["solve", "--k", "1", "--json", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["decision"], true);
    assert_eq!(r["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn c6_within_zero_is_no() {
    let f = cycle(6);
    let out = mesp(&["solve", "--k", "0", p(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("decision: no"));
}

#[test]
fn minimizing_a_path_returns_it_whole() {
    let f = path(9);
    let out = mesp(&["solve", "--minimize", "--json", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["mode"], "minimize");
    assert_eq!(r["k"], 0);
    assert_eq!(r["witness"], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7, 8]));
}

#[test]
fn every_solver_agrees_on_c6() {
    let f = cycle(6);
    for solver in ["auto", "brute", "mw", "cluster", "paths"] {
        let r = json(&mesp(&["solve", "--minimize", "--json", "--solver", solver, p(&f)]));
        assert_eq!(r["k"], 1, "{solver}");
        assert_eq!(r["requested_solver"], solver);
    }
}

#[test]
fn verify_examples() {
    let c6 = cycle(6);
    assert_eq!(mesp(&["verify", p(&c6), "0,1,2,3", "--k", "1"]).status.code(), Some(0));
    let out = mesp(&["verify", "--json", p(&c6), "0,1,2,3,4", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["shortest"], false);
    let p4 = path(4);
    assert_eq!(mesp(&["verify", p(&p4), "0,1,2,3", "--k", "0"]).status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let c6 = cycle(6);
    assert_eq!(mesp(&["verify", p(&c6), "0,x", "--k", "1"]).status.code(), Some(2));
    assert_eq!(mesp(&["verify", p(&c6), "0,6", "--k", "1"]).status.code(), Some(2));
    let split = edge_list(4, &[(0, 1), (2, 3)]);
    assert_eq!(mesp(&["solve", "--k", "1", p(&split)]).status.code(), Some(2));
    let bad = graph_file("3 2\n0 1\n");
    assert_eq!(mesp(&["solve", "--k", "1", p(&bad)]).status.code(), Some(2));
    // C6 is prime, so its modular width is 6.
    let out = mesp(&["solve", "--k", "1", "--solver", "mw", "--cap-mw", "5", p(&c6)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("modular width"));
    assert_eq!(mesp(&["solve", p(&c6)]).status.code(), Some(2));
}

#[test]
fn dimacs_input() {
    let f = graph_file("c the 4-cycle\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    let out = mesp(&["solve", "--minimize", "--json", p(&f)]);
    assert_eq!(json(&out)["k"], 1);
}

#[test]
fn reports_are_consistent_and_witnesses_verify() {
    let graphs = [
        edge_list(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 4)]),
        edge_list(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (1, 2)]),
        cycle(9),
    ];
    for f in &graphs {
        for k in 0..4 {
            let ks = k.to_string();
            let out = mesp(&["solve", "--json", "--k", &ks, p(f)]);
            let r = json(&out);
            let yes = r["decision"].as_bool().unwrap();
            assert_eq!(out.status.code(), Some(if yes { 0 } else { 1 }));
            assert_eq!(r["witness"].is_null(), !yes);
            assert_eq!(r["input"]["sha256"].as_str().unwrap().len(), 64);
            if yes {
                let w: Vec<String> =
                    r["witness"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
                let check = mesp(&["verify", p(f), &w.join(","), "--k", &ks]);
                assert_eq!(check.status.code(), Some(0));
            }
        }
    }
}

fn bench_rows(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let mut full = vec!["bench", "--format", "json"];
    full.extend_from_slice(args);
    let out = mesp(&full);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code(), rows.as_array().unwrap().clone())
}

#[test]
fn bench_cluster_family_agrees_with_oracle() {
    let (code, rows) = bench_rows(&["--family", "cluster-plus-p", "--param", "2", "--sizes", "40", "--seed", "7"]);
    assert_eq!(code, Some(0));
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["agrees"] == true && r["witness_ok"] == true));
}

#[test]
fn bench_subdivided_family_respects_path_bound() {
    let (code, rows) = bench_rows(&["--family", "subdivided-core", "--param", "6", "--sizes", "60"]);
    assert_eq!(code, Some(0));
    for r in rows {
        assert!(r["shortest_paths"].as_f64().unwrap() <= r["path_bound"].as_f64().unwrap());
    }
}

#[test]
fn bench_substitution_family_agrees_with_oracle() {
    let (code, rows) = bench_rows(&["--family", "substitution", "--param", "5", "--sizes", "12,15", "--solvers", "mw"]);
    assert_eq!(code, Some(0));
    assert!(rows.iter().all(|r| r["solver"] == "mw" && r["agrees"] == true));
}

#[test]
fn bench_csv_has_a_header() {
    let out = mesp(&["bench", "--family", "random", "--sizes", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("family,n,m,param,seed,"));
    assert_eq!(out.status.code(), Some(0));
}
