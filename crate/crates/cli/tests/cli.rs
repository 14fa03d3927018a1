use std::path::{Path, PathBuf};
use std::process::Command;

use clap::Parser;
use serde_json::Value;
use spanbip::gen::{gnp, rng};
use spanbip::{is_k_connected, Graph};
use spanbip_cli::io::{parse_graph_str, write_edge_list, write_graph};
use spanbip_cli::{dispatch, RunConfig};

fn spanbip(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_spanbip")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn tree_with_k1_gives_its_own_bipartition() {
    let dir = tempfile::tempdir().unwrap();
    let tree = file(dir.path(), "tree.txt", "# a small tree\n5 4\n0 1\n1 2\n1 3\n3 4\n");
    let (code, out) = spanbip(&["bipartition", "--k", "1", "--input", tree.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["outcome"]["status"], "success");
    assert_eq!(doc["certificate"]["edges"], json("[[0,1],[1,2],[1,3],[3,4]]"));
    assert_eq!(doc["certificate"]["coloring"], json("[0,1,0,0,1]"));
    assert_eq!(doc["verification"]["kappa_checked"], true);
    assert_eq!(doc["input"], json(r#"{"n":5,"m":4}"#));
}

#[test]
fn five_cycle_has_no_two_connected_bipartition() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = file(dir.path(), "c5.txt", &write_graph(&Graph::cycle(5)));
    let (code, out) = spanbip(&["oracle", "--k", "2", "--input", c5.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["outcome"], false);
    assert_eq!(doc["best_kappa"], 1);
}

#[test]
fn witness_for_seven_is_the_seven_cycle() {
    let (code, out) = spanbip(&["witness", "--n", "7", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(parse_graph_str(&out).unwrap().value, Graph::cycle(7));
    let (code, _) = spanbip(&["witness", "--n", "3"]);
    assert_eq!(code, spanbip_cli::EXIT_ERROR);
}

#[test]
fn self_loops_are_rejected_with_a_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = file(dir.path(), "bad.txt", "2 1\n0 0\n");
    let (code, out) = spanbip(&["kappa", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, spanbip_cli::EXIT_ERROR);
    let msg = json(&out)["error"].as_str().unwrap().to_owned();
    assert!(msg.contains("line 2") && msg.contains("self-loop"), "{msg}");
}

#[test]
fn edge_count_mismatch_is_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let p = file(dir.path(), "p.txt", "3 5\n0 1\n1 2\n");
    let (code, out) = spanbip(&["kappa", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["kappa"], 1);
    assert!(doc["warnings"][0].as_str().unwrap().contains("lists 2"));
}

#[test]
fn emitted_certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = gnp(80, 0.85, &mut rng(1));
    let path = file(dir.path(), "g.txt", &write_graph(&g));
    for k in [2, 3] {
        let ks = k.to_string();
        let (code, out) = spanbip(&["bipartition", "--k", &ks, "--mode", "opportunistic", "--input", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        let doc = json(&out);
        let edges: Vec<(usize, usize)> = serde_json::from_value(doc["certificate"]["edges"].clone()).unwrap();
        let coloring: Vec<u8> = serde_json::from_value(doc["certificate"]["coloring"].clone()).unwrap();
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let h = parse_graph_str(&write_edge_list(80, &edges)).unwrap().value;
        assert!(h.edges().all(|(u, v)| g.has_edge(u, v) && coloring[u] != coloring[v]));
        assert!(is_k_connected(&h, k).is_connected());
    }
}

#[test]
fn failed_constructions_exit_nonzero_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let c = file(dir.path(), "c.txt", &write_graph(&Graph::cycle(12)));
    let (code, out) = spanbip(&["bipartition", "--k", "2", "--input", c.to_str().unwrap()]);
    assert_eq!(code, spanbip_cli::EXIT_FAILURE);
    let doc = json(&out);
    assert_eq!(doc["outcome"]["status"], "precondition_violation");
    assert!(doc["certificate"].is_null());
    let (code, out) = spanbip(&["span2", "--input", c.to_str().unwrap()]);
    assert_eq!(code, spanbip_cli::EXIT_FAILURE);
    assert_eq!(json(&out)["outcome"]["status"], "failure");
    let (code, out) = spanbip(&["bipartition", "--k", "7", "--input", c.to_str().unwrap()]);
    assert_eq!(code, spanbip_cli::EXIT_FAILURE);
    assert!(json(&out)["outcome"]["reason"].as_str().unwrap().contains("k <= n/2"));
}

#[test]
fn verification_level_and_timings_are_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let g = file(dir.path(), "k.txt", &write_graph(&Graph::complete(20)));
    let g = g.to_str().unwrap();
    let cfg = RunConfig::try_parse_from(["spanbip", "bipartition", "--k", "3", "--mode", "opportunistic", "--input", g, "--verify", "sampled", "--probes", "8"]).unwrap();
    let report = dispatch(&cfg);
    assert_eq!(report.code, 0);
    assert_eq!(report.document["verification"]["level"], "sampled");
    assert_eq!(report.document["verification"]["probes"], 8);
    assert_eq!(report.document["config"]["probes"], 8);
    assert!(report.document["stats"].get("elapsed_ms").is_none());
    let timed = RunConfig::try_parse_from(["spanbip", "bipartition", "--k", "3", "--mode", "opportunistic", "--input", g, "--timings"]).unwrap();
    assert!(dispatch(&timed).document["stats"]["elapsed_ms"].is_number());
}

#[test]
fn experiments_write_csv_tables() {
    let (code, out) = spanbip(&["experiment", "rcolor", "--complete", "12", "--r", "3", "--c", "0.1", "--trials", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].contains("edge_connectivity") && lines[0].contains("success"));
    let (code, out) = spanbip(&["experiment", "maxcut", "--n", "20", "--p", "0.6", "--k", "2", "--trials", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["records"].as_array().unwrap().len(), 3);
}

#[test]
fn peel_reports_survivors_and_their_check() {
    let dir = tempfile::tempdir().unwrap();
    let mut arcs = Vec::new();
    for base in [0, 6] {
        for u in base..base + 6 {
            for v in base..base + 6 {
                if u != v {
                    arcs.push(format!("{u} {v}"));
                }
            }
        }
    }
    arcs.push("0 6".into());
    let d = file(dir.path(), "d.txt", &format!("12 {}\n{}\n", arcs.len(), arcs.join("\n")));
    let (code, out) = spanbip(&["peel", "--input", d.to_str().unwrap(), "--method", "plain", "--k", "2", "--budget", "1"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["survivors"], json("[1,2,3,4,5]"));
    assert_eq!(doc["loss_bound"], 1);
    assert_eq!(doc["verification"]["kappa_checked"], true);
    let (code, out) = spanbip(&["peel", "--input", d.to_str().unwrap(), "--method", "plain", "--k", "2", "--budget", "0"]);
    assert_eq!(code, spanbip_cli::EXIT_FAILURE);
    assert_eq!(json(&out)["outcome"]["status"], "failure");
}
