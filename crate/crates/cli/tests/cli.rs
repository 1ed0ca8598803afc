use std::io::Write;
use std::process::{Command, Output, Stdio};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use idbond::io::write_graph6;
use idbond::Graph;

fn idbond(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_idbond"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn random_census_graphs(count: usize, seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for _ in 0..count {
        let n = rng.gen_range(2..=6usize);
        let code = rng.gen_range(1..1u64 << (n * (n - 1) / 2));
        text.push_str(&write_graph6(&Graph::from_triangle_code(n, code)).unwrap());
        text.push('\n');
    }
    text
}

#[test]
fn family_output_formats() {
    let out = idbond(&["family", "--name", "cycle", "--n", "4"], "");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "Cl\n");
    let out = idbond(&["family", "--name", "path", "--n", "3", "--format", "edgelist"], "");
    assert_eq!(stdout(&out), "n 3\n0 1\n1 2\n");
    let out = idbond(&["family", "--name", "complete_bipartite", "--m", "2", "--n", "3", "--json"], "");
    let v = json(&out);
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(5), Some(6)));
}

#[test]
fn solver_subcommands() {
    let v = json(&idbond(&["gamma-i", "--input", "-"], "Cl\n"));
    assert_eq!(v["value"], 2);
    assert!(v["witness"].is_array() && v["nodes"].is_u64());
    assert_eq!(json(&idbond(&["gamma", "--input", "-"], "Cl"))["value"], 2);
    assert_eq!(json(&idbond(&["alpha", "--input", "-"], "C~"))["value"], 1);
    let v = json(&idbond(&["gamma-i", "--input", "-", "--format", "edgelist"], "n 3\n0 1\n1 2\n"));
    assert_eq!(v["value"], 1);
}

#[test]
fn bondage_certificate_fields() {
    for extra in [&[][..], &["--no-cache"][..]] {
        let mut args = vec!["bondage", "--input", "-"];
        args.extend_from_slice(extra);
        let out = idbond(&args, "Cl\n");
        assert!(out.status.success());
        let v = json(&out);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["k", "removed", "gamma_before", "gamma_after", "subsets_tested", "direction"]);
        assert_eq!(v["k"], 3);
        assert_eq!(v["direction"], "increased");
    }
}

#[test]
fn product_of_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.g6"), dir.path().join("b.g6"));
    std::fs::write(&a, "A_\n").unwrap();
    std::fs::write(&b, "A_\n").unwrap();
    let run = |op: &str| stdout(&idbond(&["product", "--op", op, a.to_str().unwrap(), b.to_str().unwrap()], ""));
    assert_eq!(run("join"), "C~\n");
    assert_eq!(run("cartesian"), "Cr\n");
    assert_eq!(run("lex"), "C~\n");
    let out = idbond(&["product", "--op", "tensor", a.to_str().unwrap(), b.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = idbond(&["audit", "--claims", "ORDER,KN-B", "--max-n", "5", "--report", report.to_str().unwrap()], "");
    assert!(out.status.success());
    assert!(stdout(&out).contains("KN-B"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 2);
    let order = &claims[0];
    assert_eq!(order["claim_id"], "ORDER");
    let c4 = &order["bindings"][0];
    assert_eq!(c4["params"]["graph"], "Cl");
    assert_eq!(c4["status"], "REFUTED");
    assert_eq!((c4["expected"].as_i64(), c4["computed"].as_i64()), (Some(1), Some(3)));
    assert!(order["summary"]["refuted"].as_u64().unwrap() >= 1);
}

#[test]
fn census_json_and_csv_agree() {
    let v = json(&idbond(&["census", "--builtin", "3"], ""));
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 8);
    assert_eq!(records.iter().filter(|r| r["b_id"] != "undef").count(), 7);
    assert_eq!(records.iter().filter(|r| r["m"].as_u64().unwrap() >= 1).count(), 7);
    let csv = stdout(&idbond(&["census", "--builtin", "3", "--csv"], ""));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 9);
    assert!(lines[0].starts_with("graph6,n,m,delta_min,gamma,gamma_i,alpha,b_id"));
    for (line, r) in lines[1..].iter().zip(records) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], r["graph6"].as_str().unwrap());
        assert_eq!(fields[5], r["gamma_i"].to_string());
    }
    let dedup = json(&idbond(&["census", "--builtin", "4", "--dedup"], ""));
    assert_eq!(dedup.as_array().unwrap().len(), 11);
}

#[test]
fn exit_codes() {
    assert_eq!(idbond(&["--help"], "").status.code(), Some(0));
    assert_eq!(idbond(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(idbond(&["family", "--name", "nope", "--n", "3"], "").status.code(), Some(1));
    assert_eq!(idbond(&["gamma-i", "--input", "-", "--csv"], "Cl").status.code(), Some(1));
    assert_eq!(idbond(&["census", "--builtin", "7"], "").status.code(), Some(1));
    assert_eq!(idbond(&["gamma-i", "--input", "-"], "C~x\n").status.code(), Some(2));
    assert_eq!(idbond(&["gamma-i", "--input", "-", "--format", "edgelist"], "n 2\n0 0\n").status.code(), Some(2));
    assert_eq!(idbond(&["bondage", "--input", "-"], "B?\n").status.code(), Some(2));
    assert_eq!(idbond(&["gamma-i", "--input", "/nonexistent/file"], "").status.code(), Some(2));
    assert_eq!(idbond(&["family", "--name", "cycle", "--n", "2"], "").status.code(), Some(2));
    let c12 = write_graph6(&idbond::families::cycle(12).unwrap()).unwrap();
    let out = idbond(&["bondage", "--input", "-", "--budget-nodes", "3"], &c12);
    assert_eq!(out.status.code(), Some(3));
    // One graph over budget in a batch is enough.
    let out = idbond(&["census", "--input", "-", "--budget-nodes", "3"], &format!("A_\n{c12}\n"));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out).as_array().unwrap().len(), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let graphs = random_census_graphs(100, 7);
    for args in [
        &["bondage", "--input", "-"][..],
        &["bondage", "--input", "-", "--no-cache"][..],
        &["audit", "--input", "-", "--claims", "DELTA,ORDER,MINMAX,EDGE-DEL", "--max-n", "4", "--json"][..],
    ] {
        let run = |t: &str| {
            let mut a = args.to_vec();
            a.extend_from_slice(&["--threads", t]);
            let out = idbond(&a, &graphs);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            out.stdout
        };
        assert_eq!(run("1"), run("8"), "{args:?}");
    }
}
