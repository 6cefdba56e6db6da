use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn severi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_severi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn record(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = severi(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn value(args: &[&str]) -> String {
    record(args)["value"].as_str().unwrap().to_string()
}

fn graph_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn severi_degrees() {
    assert_eq!(value(&["severi", "--d", "5", "--delta", "1"]), "48");
    assert_eq!(value(&["severi", "--d", "4", "--delta", "3"]), "675");
    assert_eq!(value(&["severi", "--d", "7", "--delta", "0"]), "1");
}

#[test]
fn methods_agree() {
    for method in ["floor", "exp"] {
        let rec = record(&["severi", "--d", "4", "--delta", "3", "--method", method]);
        assert_eq!(rec["value"], "675");
        assert_eq!(rec["method"], method);
    }
    assert_eq!(
        value(&["severi", "--d", "9", "--delta", "4", "--method", "exp"]),
        value(&["severi", "--d", "9", "--delta", "4"])
    );
}

#[test]
fn record_schema() {
    let rec = record(&["severi", "--d", "5", "--delta", "1"]);
    let obj = rec.as_object().unwrap();
    for key in ["command", "params", "value", "method", "ms"] {
        assert!(obj.contains_key(key), "missing {key}");
    }
    assert_eq!(rec["command"], "severi");
    assert_eq!(rec["params"]["d"], 5);
    assert_eq!(rec["params"]["delta"], 1);
    assert!(rec["ms"].is_u64());
}

#[test]
fn graph_files() {
    let gex = graph_file("gex.txt", "# example graph\n3 5 1\n4 5 2\n4 6 1\n");
    let gq = graph_file("gq_k4.txt", "4 5 2\n4 6 1\n4 6 1\n");
    let gex = gex.to_str().unwrap();
    assert_eq!(value(&["n-graph", "--graph", gex, "--d", "5"]), "148");
    assert_eq!(
        value(&["oracle", "--graph", gex, "--d", "5", "--bound", "20"]),
        "148"
    );
    assert_eq!(value(&["n-graph", "--graph", gex, "--d", "3"]), "0");
    assert_eq!(
        value(&["q-graph", "--graph", gq.to_str().unwrap(), "--d", "6"]),
        "144"
    );
}

#[test]
fn q_routes() {
    let t = record(&["q", "--d", "4", "--delta", "2", "--route", "templates"]);
    let l = record(&["q", "--d", "4", "--delta", "2", "--route", "log"]);
    assert_eq!(t["value"], "-279/2");
    assert_eq!(l["value"], "-279/2");
    assert_eq!(l["method"], "log");
}

#[test]
fn node_polynomial_coefficients() {
    let rec = record(&["node-poly", "--delta", "1"]);
    assert_eq!(rec["coefficients"], serde_json::json!(["3", "-6", "3"]));
    let text = stdout(&severi(&["node-poly", "--delta", "2"]));
    assert!(
        text.contains("3/2 (d - 1) (d - 2) (3d^2 - 3d - 11)"),
        "{text}"
    );
}

#[test]
fn template_listing() {
    let text = stdout(&severi(&["templates", "--delta", "1"]));
    assert_eq!(text.matches("# template ").count(), 2);
    let out = severi(&["templates", "--delta", "0", "--json"]);
    assert!(out.status.success());
    assert_eq!(
        serde_json::from_str::<Value>(&stdout(&out)).unwrap(),
        serde_json::json!([])
    );
    let two: Value =
        serde_json::from_str(&stdout(&severi(&["--json", "templates", "--delta", "2"]))).unwrap();
    // Size of the cogenus-2 catalog found by generate-and-filter.
    assert_eq!(two.as_array().unwrap().len(), 7);
}

#[test]
fn errors_exit_with_two() {
    let bad = graph_file("bad.txt", "3 5 1\n1 2 1\n");
    let out = severi(&["n-graph", "--graph", bad.to_str().unwrap(), "--d", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let garbage = graph_file("garbage.txt", "3 five 1\n");
    let out = severi(&["n-graph", "--graph", garbage.to_str().unwrap(), "--d", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert_eq!(
        severi(&["severi", "--d", "9", "--delta", "3", "--method", "floor"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        severi(&["templates", "--delta", "99"]).status.code(),
        Some(2)
    );
    assert_eq!(severi(&["severi", "--d", "x"]).status.code(), Some(2));
    assert_eq!(
        severi(&["n-graph", "--graph", "/nonexistent/file", "--d", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "--no-timing", "q", "--d", "9", "--delta", "3"],
        vec!["--no-timing", "severi", "--d", "12", "--delta", "4"],
        vec!["--json", "templates", "--delta", "3"],
    ] {
        let base = severi(&args);
        for jobs in ["1", "3"] {
            let mut with_jobs = vec!["--jobs", jobs];
            with_jobs.extend_from_slice(&args);
            assert_eq!(
                severi(&with_jobs).stdout,
                base.stdout,
                "{args:?} with {jobs} jobs"
            );
        }
        assert_eq!(severi(&args).stdout, base.stdout);
    }
}

#[test]
fn verify_quick_passes() {
    let out = severi(&["verify", "--level", "quick"]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14);
}

#[test]
fn verify_detects_tampered_counts() {
    let out = severi(&["verify", "--inject-fault", "n-star-off-by-one"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 12"));
}

#[test]
fn no_floating_point_in_output() {
    let text = stdout(&severi(&[
        "--json",
        "--no-timing",
        "node-poly",
        "--delta",
        "3",
    ]));
    assert!(!text.contains('.'), "{text}");
}
