use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer-cup"))
        .args(args)
        .env_remove("SPRINGER_CUP_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("json on stderr")
}

#[test]
fn enumerate_even_d53() {
    let v = stdout_json(&run(&["enumerate", "--type", "D", "--n", "8", "--k", "3", "--parity", "even"]));
    let texts: Vec<&str> = v.as_array().unwrap().iter().map(|d| d["text"].as_str().unwrap()).collect();
    assert_eq!(texts, ["D4: c1-2 r3 r4", "D4: r1 c2-3 r4", "D4: r1 r2 c3-4", "D4: r1 x2 m3-4"]);
    assert!(v.as_array().unwrap().iter().all(|d| d["parity"] == "even"));
}

#[test]
fn count_type_c() {
    assert_eq!(stdout_json(&run(&["count", "--type", "C", "--n", "6", "--k", "2"])), 4);
}

#[test]
fn verify_d10() {
    let v = stdout_json(&run(&["verify", "--type", "D", "--n", "10", "--samples", "25", "--seed", "7"]));
    assert_eq!(v["failed"], 0);
    assert!(v["components"].as_u64().unwrap() > 0);
}

#[test]
fn verify_needs_a_seed() {
    let o = run(&["verify", "--type", "D", "--n", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "usage");
}

#[test]
fn output_is_reproducible_and_independent_of_jobs() {
    let args = ["verify", "--type", "A", "--n", "6", "--samples", "4", "--seed", "3", "--distinct"];
    let a = run(&args);
    let b = run(&[&args[..], &["--jobs", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn incidence_b31_is_a_path() {
    let o = run(&["incidence", "--type", "A", "--n", "4", "--k", "1", "--pretty"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("3 nodes, 2 edges, 1 connected components"), "{text}");
    let v = stdout_json(&run(&["incidence", "--type", "A", "--n", "4", "--k", "1"]));
    let edges: Vec<(u64, u64)> =
        v["edges"].as_array().unwrap().iter().map(|e| (e["a"].as_u64().unwrap(), e["b"].as_u64().unwrap())).collect();
    assert_eq!(edges, [(0, 1), (1, 2)]);
}

#[test]
fn incidence_dot() {
    let o = run(&["incidence", "--type", "D", "--n", "8", "--k", "3", "--format", "dot"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("graph incidence {"));
    assert_eq!(text.matches(" -- ").count(), 6);
}

#[test]
fn build_then_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flag.json");
    let path = path.to_str().unwrap();
    let o = run(&["build", "--diagram", "D5: r1 m2-3 c4-5", "--params", "2:3,1:-1", "--output", path]);
    assert!(o.status.success());
    let ok = stdout_json(&run(&["check", "--diagram", "D5: r1 m2-3 c4-5", "--flag", path]));
    assert_eq!(ok["passed"], true);
    let bad = stdout_json(&run(&["check", "--diagram", "D5: r1 c2-3 m4-5", "--flag", path]));
    assert_eq!(bad["passed"], false);
    assert!(!bad["failures"].as_array().unwrap().is_empty());
}

#[test]
fn render_ascii_and_svg() {
    let o = run(&["render", "--diagram", "D3: x1 m2-3"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "| (■)\n■\n");
    let o = run(&["render", "--diagram", "A4: c1-4 c2-3", "--format", "svg"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("<svg"));
}

#[test]
fn enumerate_writes_svg_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "--type", "A", "--n", "4", "--k", "1", "--svg-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn pretty_enumeration() {
    let o = run(&["enumerate", "--type", "D", "--n", "4", "--k", "2", "--parity", "odd", "--pretty"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1 diagrams\n  D2: m1-2\n");
}

#[test]
fn domain_errors_exit_one_with_codes() {
    let cases: [(&[&str], &str); 5] = [
        (&["count", "--type", "D", "--n", "7", "--k", "2"], "bad_partition"),
        (&["build", "--diagram", "D4: c1-2 c3-4", "--params", "1:1"], "param_count"),
        (&["build", "--diagram", "D2: c1-2", "--params", "0:0"], "bad_params"),
        (&["render", "--diagram", "A4: c1-3 c2-4"], "invalid_diagram"),
        (&["render", "--diagram", "D4 c1-2"], "parse_diagram"),
    ];
    for (args, code) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let e = stderr_json(&o);
        assert_eq!(e["code"], code, "{args:?}");
        assert!(e["message"].is_string());
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["enumerate", "--type", "B", "--n", "4", "--k", "1"][..], &["frobnicate"], &["enumerate", "--type", "A", "--n", "4", "--k", "1", "--parity", "even"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert_eq!(stderr_json(&o)["code"], "usage");
    }
}
