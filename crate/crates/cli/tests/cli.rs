use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn parcol(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_parcol"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn parcol");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = parcol(&full, None);
    assert!(out.status.success());
    stdout(&out)
}

#[test]
fn hopf_stiefel_prints_value() {
    let out = parcol(&["hopf-stiefel", "2", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "4");
}

#[test]
fn check_spec_on_four_cycle() {
    let c4 = gen(&["cycle", "4"]);
    let out = parcol(&["check-spec", "--coloring", "1,2,1,3"], Some(&c4));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["num_colors_star"], 2);
    assert_eq!(v["refinement_map"]["2"], v["refinement_map"]["3"]);

    let out = parcol(&["check-spec", "--coloring", "1,2,1,2"], Some(&c4));
    assert_eq!(out.status.code(), Some(0));
    let out = parcol(&["check-spec", "--coloring", "1,1,2,2"], Some(&c4));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["spec"], false);
}

#[test]
fn coloring_accepts_json_and_files() {
    let c4 = gen(&["cycle", "4"]);
    let dir = std::env::temp_dir().join(format!("parcol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("c4.json");
    std::fs::write(&graph, &c4).unwrap();
    let coloring = dir.join("phi.json");
    std::fs::write(&coloring, r#"{"colors": [1, 2, 1, 3]}"#).unwrap();
    let g = graph.to_str().unwrap();
    let out = parcol(&["canonicalize", "--graph", g, "--coloring", coloring.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let out = parcol(&["canonicalize", "--graph", g, "--coloring", r#"{"colors":[1,2,1,3]}"#], None);
    assert_eq!(out.status.code(), Some(0));
    let out = parcol(&["canonicalize", "--graph", g, "--coloring", "1,2"], None);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_pec_reports_path() {
    let c5 = gen(&["cycle", "5"]);
    let out = parcol(&["check-pec", "--coloring", "1,2,1,3,2"], Some(&c5));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["parity_path"].as_array().unwrap().len(), 5);
    let out = parcol(&["check-pec", "--coloring", "1,2,1,3,4"], Some(&c5));
    assert_eq!(out.status.code(), Some(0));
    let big = gen(&["path", "30"]);
    let colors: Vec<String> = (1..30).map(|c| c.to_string()).collect();
    let out = parcol(&["check-pec", "--coloring", &colors.join(",")], Some(&big));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solvers_through_pipe() {
    let k44 = gen(&["complete_bipartite", "4", "4"]);
    let out = parcol(&["phat"], Some(&k44));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], 4);
    assert_eq!(v["status"], "exact");
    assert_eq!(v["witness"].as_array().unwrap().len(), 8);

    let p8 = gen(&["path", "8"]);
    let v = json(&parcol(&["p", "--budget", "30s"], Some(&p8)));
    assert_eq!(v["value"], 3);

    let k5 = gen(&["complete", "5"]);
    let out = parcol(&["p", "--max-nodes", "1"], Some(&k5));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "interval");
}

#[test]
fn solver_witness_round_trips() {
    let c6 = gen(&["cycle", "6"]);
    let v = json(&parcol(&["p"], Some(&c6)));
    let colors: Vec<String> = v["witness"].as_array().unwrap().iter().map(|c| c.to_string()).collect();
    let out = parcol(&["check-pec", "--coloring", &colors.join(",")], Some(&c6));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gen_round_trips() {
    for args in [
        vec!["complete", "5"],
        vec!["path_power", "9", "3"],
        vec!["bip_path_power", "8", "2"],
        vec!["hypercube", "3"],
        vec!["two_block", "2"],
        vec!["hub", "2"],
    ] {
        let text = gen(&args);
        let parsed: parcol::graph::Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    }
    let dot = gen(&["cycle", "5", "--dot"]);
    assert!(dot.starts_with("graph"));
}

#[test]
fn usage_and_guard_errors() {
    assert_eq!(parcol(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(parcol(&["gen", "moebius", "3"], None).status.code(), Some(2));
    assert_eq!(parcol(&["gen", "two_block", "16"], None).status.code(), Some(3));
    assert_eq!(parcol(&["experiment", "unknown-id"], None).status.code(), Some(2));
    assert_eq!(parcol(&["phat"], Some("not json")).status.code(), Some(2));
    let disconnected = r#"{"n": 3, "edges": [[0, 1]]}"#;
    assert_eq!(parcol(&["phat"], Some(disconnected)).status.code(), Some(2));
}

#[test]
fn bounds_table() {
    let out = parcol(&["bounds", "--n", "16", "--ell", "2"], None);
    assert_eq!(stdout(&out), "n\tell\tlower\tgray_count\tupper\n16\t2\t5\t7\t8\n");
    let out = parcol(&["bounds", "--n", "1024"], None);
    assert_eq!(stdout(&out).lines().count(), 11);
}

#[test]
fn gray_and_trim() {
    let v = json(&parcol(&["gray", "--n", "16", "--ell", "2"], None));
    assert_eq!(v["num_colors"], 7);
    assert_eq!(v["census"]["3"], 2);
    let v = json(&parcol(&["gray", "--check-trim", "64"], None));
    assert_eq!(v["holds"], true);
}

#[test]
fn embed_exit_codes() {
    let out = parcol(&["embed"], Some(&gen(&["cycle", "6"])));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["coords"].as_array().unwrap().len(), 6);
    let out = parcol(&["embed"], Some(&gen(&["complete", "3"])));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn experiment_report() {
    let out = parcol(&["experiment", "kst"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["id"], "kst");
    assert_eq!(v[0]["pass"], true);
    let v = json(&parcol(&["experiment", "oracle-equivalence", "--seed", "5"], None));
    assert!(v[0]["inputs"].as_str().unwrap().contains("seed 5"));
}
