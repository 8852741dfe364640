//! End-to-end tests of the `baileyforge` binary: exit codes, output formats,
//! report determinism, and schema validity.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_baileyforge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn list_contains_registry_ids() {
    let out = run(&["list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for id in ["thm1.1-compact", "eq1.5-H", "thm1.5-K-family"] {
        assert!(text.contains(id), "listing missing {id}");
    }
}

#[test]
fn list_json_is_an_array_of_id_location_pairs() {
    let out = run(&["list", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = v.as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        assert!(e["id"].is_string());
        assert!(e["paper_location"].is_string());
    }
}

#[test]
fn verify_single_identity_exits_zero() {
    let out = run(&["verify", "--identity", "thm1.1-compact", "--order", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("not a proof"));
}

#[test]
fn verify_unknown_identity_exits_two() {
    let out = run(&["verify", "--identity", "no-such-id"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_bad_order_and_bad_k() {
    let out = run(&["verify", "--identity", "thm1.1-compact", "--order", "1/3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--identity", "thm1.3-R-family", "--order", "5", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_json_report_is_valid_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path1 = dir.path().join("report1.json");
    let path2 = dir.path().join("report2.json");
    for path in [&path1, &path2] {
        let out = run(&[
            "verify",
            "--all",
            "--order",
            "8",
            "--k",
            "2",
            "--json",
            "--self-audit",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(path.exists(), "report file written");
    }

    let doc1: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path1).unwrap()).unwrap();
    let doc2: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path2).unwrap()).unwrap();

    // schema validation against the shipped schema file
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report-v1.json");
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    for doc in [&doc1, &doc2] {
        let result = compiled.validate(doc);
        if let Err(errors) = result {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("report does not validate against report-v1: {msgs:?}");
        }
    }

    assert_eq!(doc1["schema"], "report-v1");
    assert_eq!(doc1["order"], "8");
    // every registered identity appears; families once per k
    assert_eq!(doc1["reports"].as_array().unwrap().len(), 19);

    // determinism modulo the elapsed fields
    let scrub = |mut v: serde_json::Value| {
        for r in v["reports"].as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.0.into();
        }
        v
    };
    assert_eq!(scrub(doc1), scrub(doc2));
}

#[test]
fn verify_reports_mention_params_for_families() {
    let out = run(&[
        "verify",
        "--identity",
        "thm1.3-R-family",
        "--order",
        "8",
        "--k",
        "2,3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = doc["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["params"]["k"], 2);
    assert_eq!(reports[1]["params"]["k"], 3);
}

#[test]
fn coeffs_r_matches_documented_format() {
    let out = run(&["coeffs", "R", "--order", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "q^0: 0:1\nq^1: 0:1\n");
}

#[test]
fn coeffs_euler_shows_pentagonal_pattern() {
    let out = run(&["coeffs", "euler", "--order", "5"]);
    assert_eq!(stdout(&out), "q^0: 0:1\nq^1: 0:-1\nq^2: 0:-1\nq^5: 0:1\n");
}

#[test]
fn coeffs_z_slice_dumps_single_column() {
    let out = run(&["coeffs", "R", "--order", "2", "--z-slice", "1"]);
    assert_eq!(out.status.code(), Some(0));
    // coefficient of z^1 per q-power: q^2 is the first with a z^1 term
    assert_eq!(stdout(&out), "q^2: 1\n");
}

#[test]
fn coeffs_unknown_series_exits_two() {
    let out = run(&["coeffs", "nope", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coeffs_identity_side_with_k() {
    let out = run(&["coeffs", "thm1.3-R-family:rhs", "--order", "3", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("q^0: 0:1"));
    // family side without k is a usage error
    let out = run(&["coeffs", "thm1.3-R-family:rhs", "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_at_least_four_rows_and_json_roundtrips() {
    let out = run(&["bench", "--order", "8", "--reps", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().count() >= 4);

    let out = run(&["bench", "--order", "8", "--reps", "1", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["rows"].as_array().unwrap().len() >= 4);
    let text = serde_json::to_string(&doc).unwrap();
    let again: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn thread_cap_env_is_validated() {
    let out = bin()
        .args(["verify", "--identity", "rel-R-symmetry", "--order", "6"])
        .env("BAILEYFORGE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = bin()
        .args(["list"])
        .env("BAILEYFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_status_is_stable_across_runs() {
    let args = ["verify", "--identity", "eq1.4-H-g2", "--order", "10"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), b.status.code());
    let strip = |s: String| -> Vec<String> {
        s.lines()
            .map(|l| {
                // drop the timing column
                l.split(" ms —").last().unwrap_or(l).to_string()
            })
            .collect()
    };
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
}
