use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_steiner-kit");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("STEINER_KIT_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn formula_prints_integers() {
    let o = run(&["formula", "--spec", "path:n=7", "--k", "4", "--kprime", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4");

    let o = run(&["formula", "--spec", "complete:n=5", "--k", "3"]);
    assert_eq!(stdout(&o), "2");

    let o = run(&["formula", "--bound", "tree_k1", "--k", "3", "--sr", "3"]);
    assert_eq!(stdout(&o), "9/2");

    let o = run(&["formula", "--spec", "star:m=4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_and_oracle_on_bipartite_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("k23.g6");
    let o = run(&["family", "--spec", "multipartite:parts=2-3", "--out", g6.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // vertices 2, 3, 4 form the side of size three
    let o = run(&["oracle", "--in", g6.to_str().unwrap(), "--set", "2,3,4"]);
    assert_eq!(stdout(&o), "3");
}

#[test]
fn enumerate_writes_one_line_per_class() {
    let o = run(&["enumerate", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 23);
    let o = run(&["enumerate", "--n", "6", "--up-to"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 1 + 1 + 2 + 3 + 6);
}

#[test]
fn compute_reports_records() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("t.g6");
    fs::write(&g6, format!("{}\n\n", stdout(&run(&["family", "--spec", "p2ab:l=2,a=2,b=2,x=3"])))).unwrap();
    let out = dir.path().join("params.json");
    let o = run(&[
        "compute",
        "--in",
        g6.to_str().unwrap(),
        "--k",
        "4",
        "--kprime",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let rec = &v[0]["records"][0];
    assert_eq!(rec["sd_k"], 13);
    assert_eq!(rec["sr_kk"], 7);

    let o = run(&["compute", "--in", g6.to_str().unwrap(), "--k", "4", "--all"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["records"].as_array().unwrap().len(), 2 + 3 + 4);
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o =
        run(&["verify", "--suite", "thm_k2", "--n-max", "9", "--k", "3:5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["violations"], Value::Array(vec![]));
    assert!(v["total_instances"].as_u64().unwrap() > 0);
    assert!(!v.as_object().unwrap().contains_key("runtime"));
}

#[test]
fn verify_reads_graph6_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("star.g6");
    fs::write(&g6, stdout(&run(&["family", "--spec", "star:m=5"]))).unwrap();
    let o =
        run(&["verify", "--suite", "thm_k1", "--in", g6.to_str().unwrap(), "--k", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("kind,suite"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("equality,thm_k1"));
    assert!(row.contains("3/1,3/1,true,true"));
}

#[test]
fn jobs_from_environment_do_not_change_output() {
    let args = ["verify", "--suite", "chain", "--n-max", "7", "--k", "2:4"];
    let base = run(&args).stdout;
    let with_env = Command::new(BIN).args(args).env("STEINER_KIT_JOBS", "3").output().unwrap().stdout;
    assert_eq!(base, with_env);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "--suite", "nope", "--n-max", "4", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "thm34", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--n", "17"]).status.code(), Some(3));
    assert_eq!(run(&["hunt", "--n-max", "17", "--k", "3", "--kprime", "1"]).status.code(), Some(3));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g6");
    fs::write(&bad, "A_\nC~~\n").unwrap();
    let o = run(&["compute", "--in", bad.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn hunt_small_range_passes() {
    let o = run(&["hunt", "--n-max", "8", "--k", "3:5", "--kprime", "1:4", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "conjecture");
    assert!(v["equality_counts"].as_array().unwrap().iter().any(|c| c["kprime"] == 2));
}
