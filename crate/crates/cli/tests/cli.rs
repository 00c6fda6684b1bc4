use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robustpoly"))
}

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/examples")
        .join(name)
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = bin().args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(stdout.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, stdout)
}

fn run_file(command: &str, path: &Path, extra: &[&str]) -> (i32, Value, String) {
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn write_problem(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn num(v: &Value) -> f64 {
    v.as_str()
        .map(|s| s.parse().unwrap())
        .or_else(|| v.as_f64())
        .unwrap()
}

#[test]
fn stable_quadratic_lists_four_vertices() {
    let (code, report, _) = run_file("check", &example("interval.json"), &[]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "stable");
    assert_eq!(report["checks"].as_array().unwrap().len(), 4);
    assert!(report["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn matrix_fixture_reports_expansion() {
    let (code, report, _) = run_file("check-matrix", &example("matrix-pencil.json"), &[]);
    assert_eq!(code, 0, "{report}");
    let got: Vec<f64> = report["result"]["expansion_descending"]
        .as_array()
        .unwrap()
        .iter()
        .map(num)
        .collect();
    for (a, b) in got.iter().zip([16.0, 176.0, 279.0, 90.0]) {
        assert!((a - b).abs() <= 1e-7, "{got:?}");
    }
    assert_eq!(report["result"]["expanded_coefficient_verdict"], "stable");
}

#[test]
fn sensitivity_with_oracle_block() {
    let (code, report, _) = run_file(
        "sensitivity-max",
        &example("sensitivity.json"),
        &["--oracle", "2000"],
    );
    assert_eq!(code, 0, "{report}");
    assert_eq!(report["verdict"], "value");
    let gamma = num(&report["result"]["gamma_max"]);
    assert!(gamma >= 1.0);
    assert!(report["result"]["argmax"]
        .as_str()
        .unwrap()
        .starts_with('J'));
    assert_eq!(report["oracle"]["agreement"], true);
    assert!(report["oracle"]["samples_tested"].as_u64().unwrap() >= 2000);
    assert_eq!(report["checks"].as_array().unwrap().len(), 12);
}

#[test]
fn unstable_family_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    // s^3 + s^2 + s + [2, 3]: a2 a1 < a0 for every member.
    let path = write_problem(
        &dir,
        "bad.json",
        r#"{"schema_version": 1, "kind": "interval-hurwitz", "family": {"real": [[2, 3], 1, 1, 1]}}"#,
    );
    let (code, report, _) = run_file("interval-hurwitz", &path, &["--oracle", "200"]);
    assert_eq!(code, 1);
    assert_eq!(report["verdict"], "unstable");
    assert!(!report["witnesses"].as_array().unwrap().is_empty());
    assert_eq!(report["oracle"]["agreement"], true);
}

#[test]
fn not_spr_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // (s - 1) / (s + 1) has negative real part at low frequency.
    let path = write_problem(
        &dir,
        "tf.json",
        r#"{"schema_version": 1, "kind": "spr", "numerator": [-1, 1], "denominator": [1, 1]}"#,
    );
    let (code, report, _) = run_file("spr", &path, &[]);
    assert_eq!(code, 1);
    assert_eq!(report["verdict"], "not-spr");
    assert!(report["witnesses"][0]["denominator"].is_array());
}

#[test]
fn reports_are_reproducible_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string(&v).unwrap()
    };
    for name in ["composite-cubic.json", "spr.json", "edge.json"] {
        let a = run_file("check", &example(name), &["--oracle", "300", "--seed", "7"]).1;
        let b = run_file("check", &example(name), &["--oracle", "300", "--seed", "7"]).1;
        assert_eq!(strip(a), strip(b), "{name}");
    }
}

#[test]
fn exit_codes_match_verdicts_for_all_examples() {
    for entry in std::fs::read_dir(example("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let csv = tempfile::NamedTempFile::new().unwrap();
        let (code, report, _) = run_file("check", &path, &["--csv", csv.path().to_str().unwrap()]);
        let expected = match report["verdict"].as_str().unwrap() {
            "stable" | "spr" | "value" => 0,
            "unstable" | "not-spr" => 1,
            "indeterminate" => 2,
            other => panic!("verdict {other}"),
        };
        assert_eq!(code, expected, "{}", path.display());
    }
}

#[test]
fn full16_forces_every_pair() {
    let (_, reduced, _) = run_file("two-family", &example("two-family.json"), &[]);
    let (_, full, _) = run_file("two-family", &example("two-family.json"), &["--full16"]);
    assert!(reduced["checks"].as_array().unwrap().len() < 16);
    assert_eq!(full["checks"].as_array().unwrap().len(), 16);
    assert_eq!(reduced["verdict"], full["verdict"]);
}

#[test]
fn value_set_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("vs.csv");
    let (code, report, _) = run_file(
        "value-set",
        &example("value-set.json"),
        &["--csv", csv.to_str().unwrap()],
    );
    assert_eq!(code, 0);
    assert_eq!(report["result"]["zero_excluded"], true);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,vertex_index,re,im"));
    // five frequencies; omega = 0 collapses to a segment, the rest are rectangles
    assert_eq!(lines.count(), 2 + 4 * 4);
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "unknown.json",
            r#"{"schema_version": 1, "kind": "spr", "numerator": [1], "denominator": [1, 1], "extra": 1}"#,
        ),
        (
            "noversion.json",
            r#"{"kind": "spr", "numerator": [1], "denominator": [1, 1]}"#,
        ),
        (
            "badkind.json",
            r#"{"schema_version": 1, "kind": "nonsense"}"#,
        ),
        ("badjson.json", r#"{"schema_version": 1,"#),
        (
            "reversed.json",
            r#"{"schema_version": 1, "kind": "interval-hurwitz", "family": {"real": [[3, 2], 1]}}"#,
        ),
        (
            "improper.json",
            r#"{"schema_version": 1, "kind": "spr", "numerator": [1, 1, 1], "denominator": [1, 1]}"#,
        ),
    ];
    for (name, body) in cases {
        let path = write_problem(&dir, name, body);
        let (code, report, _) = run_file("check", &path, &[]);
        assert_eq!(code, 3, "{name}");
        assert!(report["error"]["message"].is_string(), "{name}: {report}");
    }
    let (code, report, _) = run_file("spr", &example("interval.json"), &[]);
    assert_eq!(code, 3);
    assert_eq!(report["error"]["kind"], "schema");
    let (code, _, _) = run_file("check", &dir.path().join("missing.json"), &[]);
    assert_eq!(code, 3);
    assert_eq!(
        bin().arg("no-such-command").output().unwrap().status.code(),
        Some(3)
    );
}

#[test]
fn pretty_output_is_the_same_document() {
    let (_, compact, _) = run_file("check", &example("interval.json"), &[]);
    let (_, pretty, text) = run_file("check", &example("interval.json"), &["--json-indent"]);
    assert!(text.lines().count() > 5);
    assert_eq!(compact["checks"], pretty["checks"]);
}
