//! End-to-end tests against the compiled binary: exact stdout for the
//! text contract, schema checks for --json, and the exit-code mapping
//! (0 success, 1 failed verification, 2 usage or input errors).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_posetope"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid json")
}

const FENCE: &str = "\
elem m0 p q r m3 m1 m2
mark m0 0
mark m1 1
mark m2 2
mark m3 3
cover m0 p
cover p q
cover q r
cover r m3
cover m1 q
cover q m2
";

fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn count_prints_a_bare_number() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    for kind in ["order", "chain"] {
        let out = run(&["count", file.to_str().unwrap(), "--polytope", kind]);
        assert!(out.status.success());
        assert_eq!(stdout(&out), "12\n", "{kind}");
    }
}

#[test]
fn count_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["count", file.to_str().unwrap(), "--polytope", "order", "--grid", "2", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "count");
    assert_eq!(v["polytope"], "order");
    assert_eq!(v["grid"], 2);
    let expected = posetope::polytope::count_order_points(
        &posetope::cli::parse_marked_poset(FENCE).unwrap(),
        2,
    );
    assert_eq!(v["count"], expected.to_string());
}

#[test]
fn enumerate_lists_sorted_rows_under_a_header() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["enumerate", file.to_str().unwrap(), "--polytope", "order"]);
    assert!(out.status.success());
    let want = "\
p q r
0 1 1
0 1 2
0 1 3
0 2 2
0 2 3
1 1 1
1 1 2
1 1 3
1 2 2
1 2 3
2 2 2
2 2 3
";
    assert_eq!(stdout(&out), want);
}

#[test]
fn enumerate_json_carries_vars_and_points() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["--json", "enumerate", file.to_str().unwrap(), "--polytope", "chain"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["vars"], serde_json::json!(["p", "q", "r"]));
    assert_eq!(v["points"].as_array().unwrap().len(), 12);
    assert_eq!(v["points"][0], serde_json::json!(["0", "0", "0"]));
}

#[test]
fn transfer_round_trips_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["transfer", file.to_str().unwrap(), "--direction", "forward", "--point", "1,2,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p q r\n1 1 1\n");

    let out = run(&["transfer", file.to_str().unwrap(), "--direction", "back", "--point", "1,1,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "p q r\n1 2 3\n");

    let out = run(&["transfer", file.to_str().unwrap(), "--direction", "forward", "--point", "1/2,3/2,2", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["direction"], "forward");
    let mapped: Vec<String> = v["point"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(mapped, ["1/2", "1/2", "1/2"]);
}

#[test]
fn transfer_rejects_wrong_arity() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["transfer", file.to_str().unwrap(), "--direction", "forward", "--point", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn verify_passes_on_the_fence() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["verify", file.to_str().unwrap(), "--grid", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for (line, name) in lines.iter().zip(["counts", "ehrhart", "roundtrip", "bijection"]) {
        assert!(line.starts_with(&format!("PASS {name}")), "{line}");
    }
}

#[test]
fn verify_flags_the_half_integral_segment() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "segment.poset",
        "elem a p b\nmark a 1/2\nmark b 3/2\ncover a p\ncover p b\n",
    );
    let out = run(&["verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL counts (order=1 chain=2 grid=1)"), "{text}");
    assert!(text.contains("SKIP ehrhart"), "{text}");
    assert!(text.contains("PASS roundtrip"), "{text}");
    assert!(text.contains("SKIP bijection"), "{text}");

    let out = run(&["--json", "verify", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn lie_gt_output_is_a_reusable_poset_file() {
    let out = run(&["lie", "gt", "--n", "3", "--weight", "2,1,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# count 8"), "{text}");
    assert!(text.contains("# chain count 8"), "{text}");
    assert!(text.contains("# weyl 8"), "{text}");
    assert!(text.contains("# MATCH"), "{text}");

    // feed the emitted board straight back in
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "gt.poset", &text);
    let out = run(&["count", file.to_str().unwrap(), "--polytope", "order"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "8\n");
}

#[test]
fn lie_ffl_prints_the_inequality_system() {
    let out = run(&["lie", "ffl", "--n", "3", "--weight", "2,1,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# vars (all >= 0): s1_2 s1_3 s2_3"), "{text}");
    assert!(text.contains("s1_2 <= 1"), "{text}");
    assert!(text.contains("s1_2 + s1_3 + s2_3 <= 2"), "{text}");
    assert!(text.contains("s2_3 <= 1"), "{text}");
    assert!(text.contains("# count 8"), "{text}");
    assert!(text.contains("# MATCH"), "{text}");
}

#[test]
fn lie_sp_json_reports_both_counts() {
    let out = run(&["--json", "lie", "sp", "--n", "2", "--weight", "2,1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["family"], "sp");
    assert_eq!(v["counts"]["order"], "16");
    assert_eq!(v["counts"]["chain"], "16");
    assert_eq!(v["weyl"], "16");
    assert_eq!(v["match"], true);
    assert!(v["poset"].as_str().unwrap().contains("elem"));
}

#[test]
fn lie_so_reports_pattern_and_transfer_counts() {
    let out = run(&["lie", "so", "--n", "2", "--weight", "1,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# pattern count 5"), "{text}");
    assert!(text.contains("# transfer count 5"), "{text}");
    assert!(text.contains("# weyl 5"), "{text}");
    assert!(text.contains("# MATCH"), "{text}");
}

#[test]
fn lie_rejects_a_weight_of_the_wrong_length() {
    let out = run(&["lie", "gt", "--n", "3", "--weight", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "bad.poset", "elem a b\nmark a zero\ncover a b\n");
    let out = run(&["count", file.to_str().unwrap(), "--polytope", "order"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["count", "/nonexistent.poset", "--polytope", "order"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn ehrhart_requires_an_integral_marking() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "segment.poset",
        "elem a p b\nmark a 1/2\nmark b 3/2\ncover a p\ncover p b\n",
    );
    let out = run(&["ehrhart", file.to_str().unwrap(), "--polytope", "order"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn decreasing_adjacent_marks_warn_but_still_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "clash.poset",
        "elem a p b c\nmark a 0\nmark b 2\nmark c 1\ncover a p\ncover p b\ncover b c\n",
    );
    let out = run(&["count", file.to_str().unwrap(), "--polytope", "order"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning: b < c carries decreasing marks (2 > 1)"), "{}", stderr(&out));
}

#[test]
fn fuzz_is_deterministic_and_clean_on_integer_marks() {
    let a = run(&["fuzz", "--seed", "7", "--iters", "40"]);
    let b = run(&["fuzz", "--seed", "7", "--iters", "40"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), "checked 40 posets: order and chain counts agree\n");
}

#[test]
fn fuzz_real_marks_reports_a_witness() {
    let out = run(&["fuzz", "--seed", "1", "--iters", "200", "--real-marks"]);
    assert!(out.status.success(), "finding a counterexample is the expected outcome");
    let text = stdout(&out);
    assert!(text.contains("witness at iteration"), "{text}");
    assert!(text.contains("found the expected integrality counterexample"), "{text}");

    let out = run(&["--json", "fuzz", "--seed", "1", "--iters", "200", "--real-marks"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert!(v["witness"].is_object());
    assert_ne!(v["witness"]["order"], v["witness"]["chain"]);
}

#[test]
fn ehrhart_text_and_json_agree_on_the_fence() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "fence.poset", FENCE);
    let out = run(&["ehrhart", file.to_str().unwrap(), "--polytope", "chain"]);
    assert!(out.status.success());
    let text = stdout(&out);

    let out = run(&["ehrhart", file.to_str().unwrap(), "--polytope", "order", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["degree"], 3);
    let coeffs: Vec<String> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    // constant term 1, and the polynomial printed for the chain side is the
    // same one the order side serializes
    assert_eq!(coeffs[0], "1");
    let poly = posetope::polytope::ehrhart(
        &posetope::cli::parse_marked_poset(FENCE).unwrap(),
        posetope::PolytopeKind::Order,
    )
    .unwrap();
    assert_eq!(text.trim(), poly.to_string());
    assert_eq!(
        coeffs,
        poly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
}
