use std::process::{Command, Output};

use clausen_core::report::RecordDetail;
use clausen_core::ReportDocument;
use serde_json::Value;

fn clausen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clausen")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn eval_examples() {
    for (args, want) in [
        (&["eval", "--num", "-1,1,1", "--den", "-2,1", "--z", "1", "--truncate", "1"][..], "3/2"),
        (&["eval", "--num", "-2,1", "--den", "1", "--z", "1"][..], "0"),
        (&["eval", "--num", "-1,2,3", "--den", "4,5", "--z", "1"][..], "7/10"),
    ] {
        let out = clausen(args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(stdout(&out).trim(), want, "{args:?}");
    }
}

#[test]
fn eval_errors() {
    let out = clausen(&["eval", "--num", "1/x", "--den", "1", "--z", "1"]);
    assert_ne!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1/x"));

    let out = clausen(&["eval", "--num", "1,1", "--den", "1", "--z", "1", "--float"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_examples() {
    let out = clausen(&["verify", "--id", "watson.trunc-m", "--m", "1", "--alpha", "1", "--beta", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("equal: 4/3 = 4/3"));

    let out = clausen(&["verify", "--id", "whipple.trunc-m", "--m", "1", "--k", "1", "--alpha", "1/2", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["lhs"]["exact"], "25/24");
    assert_eq!(v["rhs"]["exact"], "25/24");
}

#[test]
fn side_condition_violation_exits_with_two() {
    let out = clausen(&["verify", "--id", "saalschutz.trunc", "--m", "1", "--k", "1", "--alpha", "-2", "--beta", "1"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("side condition") && err.contains("α"), "{err}");
}

#[test]
fn unreachable_tolerance_is_a_mismatch() {
    let args = ["verify", "--id", "watson.nt", "--alpha", "1/3", "--beta", "1/5", "--gamma", "7/4"];
    assert_eq!(code(&clausen(&args)), 0);
    let mut strict = args.to_vec();
    strict.extend(["--tol", "1e-40"]);
    assert_eq!(code(&clausen(&strict)), 1);
}

#[test]
fn mellin_examples() {
    let out = clausen(&["mellin", "--case", "IV", "--m", "1", "--k", "1", "--alpha", "1", "--beta", "1", "--mu", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("coefficient: 9/8"));
    assert!(text.contains("value: 1.125"));

    let out = clausen(&["mellin", "--case", "III", "--m", "1", "--k", "1", "--beta", "2/3", "--mu", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("coefficient: 0\n"));

    let out = clausen(&["mellin", "--case", "I", "--m", "1", "--alpha", "1", "--beta", "1", "--mu", "1", "--quad", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["closed_form"]["coefficient"], "4/3");
    assert!(v["quad_rel_diff"].as_f64().unwrap() < 1e-10);
}

#[test]
fn list_shows_catalog() {
    let out = clausen(&["list", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["theorems"].as_array().unwrap().len(), 34);
    assert_eq!(v["mellin_cases"].as_array().unwrap().len(), 16);
    assert!(v["theorems"].as_array().unwrap().iter().any(|t| t["tag"] == "2.14a"));

    let text = stdout(&clausen(&["list"]));
    assert!(text.contains("dixon.nt-reflect") && text.contains("2.19"));
}

#[test]
fn zero_sweep_report() {
    let out = clausen(&["sweep", "--theorems", "watson.trunc-2m1", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let doc = ReportDocument::from_json(&text).unwrap();
    assert_eq!(doc.records.len(), 50);
    assert_eq!(doc.summary.mismatch, 0);
    for r in &doc.records {
        let Some(RecordDetail::Theorem(t)) = &r.detail else { panic!("theorem record expected") };
        assert_eq!(serde_json::to_value(&t.lhs).unwrap()["exact"], "0");
    }
    assert_eq!(doc.to_json(), text);
}

#[test]
fn sweep_is_deterministic_across_job_counts() {
    let args = ["sweep", "--theorems", "saalschutz.trunc,whipple.nt", "--mellin", "V,generic", "--edges", "--trials", "4", "--seed", "9"];
    let one = clausen(&[&args[..], &["--jobs", "1"]].concat());
    let two = clausen(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn rejects_unknown_theorem() {
    let out = clausen(&["verify", "--id", "nope", "--m", "1"]);
    assert_ne!(code(&out), 0);
}

#[test]
fn reports_match_the_shipped_schema() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../schema/report-v1.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let out = clausen(&["sweep", "--theorems", "all", "--edges", "--mellin", "all", "--trials", "1", "--seed", "5"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:?}");
}
