use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_troplog")).args(args).output().expect("spawn")
}

fn run_ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&run_ok(args)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn check_schema(name: &str, v: &Value) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(root().join("schemas").join(name)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn count_examples() {
    let r = json(&["count", "--degree", "2", "--genus", "0", "--seed", "7"]);
    assert_eq!(r["count"], 1);
    check_schema("count_report.schema.json", &r);
    assert_eq!(json(&["count", "--degree", "1", "--genus", "0"])["count"], 1);
    let r = json(&["count", "--degree", "3", "--genus", "0", "--emit-solutions"]);
    assert_eq!(r["count"], 12);
    check_schema("count_report.schema.json", &r);
    let text = run_ok(&["count", "--degree", "1", "--format", "text"]);
    assert!(text.starts_with("degree 1 genus 0 count 1"));
}

#[test]
fn count_is_golden_and_thread_independent() {
    let golden = std::fs::read_to_string(root().join("tests/golden/count_d2_s7.json")).unwrap();
    let args = ["count", "--degree", "2", "--seed", "7", "--emit-solutions"];
    assert_eq!(run_ok(&args).trim_end(), golden.trim_end());
    let o = Command::new(env!("CARGO_BIN_EXE_troplog")).args(args).env("TROPLOG_THREADS", "1").output().unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim_end(), golden.trim_end());
}

#[test]
fn non_generic_points_exit_two() {
    assert_eq!(code(&["count", "--degree", "1", "--points", p(&fixture("repeated_points.json"))]), 2);
    assert_eq!(code(&["count", "--degree", "2", "--points", p(&fixture("repeated_points.json"))]), 1);
}

#[test]
fn rigid_examples() {
    let r = json(&["rigid", p(&fixture("conic_setup.json"))]);
    assert_eq!(r["count"], 1);
    assert_eq!(r["data"][0]["coefficient"], "1");
    check_schema("rigid_report.schema.json", &r);

    let golden = std::fs::read_to_string(root().join("tests/golden/rigid_line.json")).unwrap();
    let out = run_ok(&["rigid", p(&fixture("line_setup.json"))]);
    assert_eq!(out.trim_end(), golden.trim_end());
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!((r["count"].as_u64(), r["data"][0]["coefficient"].as_str()), (Some(1), Some("1")));

    let r = json(&["rigid", p(&fixture("chain_setup.json"))]);
    assert_eq!(r["total_coefficient"], "3");
    check_schema("rigid_report.schema.json", &r);

    let r = json(&["rigid", p(&fixture("infeasible_setup.json"))]);
    assert_eq!(r["count"], 0);
    assert_eq!(r["data"], Value::Array(vec![]));
}

#[test]
fn flatten_examples() {
    let r = json(&["flatten", p(&fixture("identity_map.json"))]);
    assert_eq!((r["iterations"].as_u64(), r["domain_subdivided"].as_bool(), r["codomain_subdivided"].as_bool()), (Some(0), Some(false), Some(false)));
    check_schema("flatten_result.schema.json", &r);

    let r = json(&["flatten", p(&fixture("eval_chain.json"))]);
    assert_eq!(r["flat"], true);
    assert_eq!(r["domain_subdivided"], false);
    check_schema("flatten_result.schema.json", &r);

    assert_eq!(code(&["flatten", p(&fixture("ray_into_quadrant.json")), "--max-iter", "0"]), 3);
    assert_eq!(json(&["flatten", p(&fixture("ray_into_quadrant.json"))])["iterations"], 1);
}

#[test]
fn plots_are_deterministic() {
    let golden = std::fs::read_to_string(root().join("tests/golden/line.svg")).unwrap();
    let a = run_ok(&["plot", p(&fixture("line_map.json"))]);
    let b = run_ok(&["plot", p(&fixture("line_map.json"))]);
    assert_eq!(a, b);
    assert_eq!(a.trim_end(), golden.trim_end());
    assert_eq!(a.matches("<line").count(), 3);

    let tri = run_ok(&["plot", p(&fixture("triangle_2.json"))]);
    assert_eq!(tri.matches("<polygon").count(), 4);
    assert_eq!(tri.matches("<circle").count(), 6);
}

#[test]
fn conic_solution_plots_through_five_points() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("conic.json");
    run_ok(&["count", "--degree", "2", "--seed", "7", "--emit-solutions", "--out", p(&report)]);
    let svg = run_ok(&["plot", p(&report)]);
    assert_eq!(svg.matches("<circle").count(), 5);
    let direct = run_ok(&["count", "--degree", "2", "--seed", "7", "--format", "svg"]);
    assert_eq!(direct, svg);
    // No temporary file is left behind by the atomic write.
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names, vec![std::ffi::OsString::from("conic.json")]);
}

#[test]
fn non_plane_input_exits_four() {
    assert_eq!(code(&["plot", p(&fixture("p2_fan.json"))]), 4);
    // Rigid data live in rank 3.
    let dir = tempfile::tempdir().unwrap();
    let r = json(&["rigid", p(&fixture("line_setup.json"))]);
    let map = dir.path().join("map.json");
    std::fs::write(&map, r["data"][0]["map"].to_string()).unwrap();
    assert_eq!(code(&["plot", p(&map)]), 4);
    let report = dir.path().join("bare.json");
    std::fs::write(&report, run_ok(&["count", "--degree", "1"])).unwrap();
    assert_eq!(code(&["plot", p(&report)]), 4);
}

#[test]
fn quotient_and_refine() {
    let golden = std::fs::read_to_string(root().join("tests/golden/quotient_p2.json")).unwrap();
    let out = run_ok(&["quotient-fan", p(&fixture("p2_fan.json")), "--direction", "1,1"]);
    assert_eq!(out.trim_end(), golden.trim_end());
    let q: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(q["rank"], 1);
    assert_eq!(q["cones"].as_array().unwrap().len(), 2);
    check_schema("complex.schema.json", &q);

    let r = json(&["refine", p(&fixture("p2_fan.json")), p(&fixture("p2_fan.json"))]);
    check_schema("complex.schema.json", &r);
    assert_eq!(r["cones"].as_array().unwrap().len(), 3);
}

#[test]
fn validate_reports() {
    let r = json(&["validate", p(&fixture("triangle_2.json"))]);
    assert_eq!((r["kind"].as_str(), r["ok"].as_bool()), (Some("decomposition"), Some(true)));
    check_schema("validate_report.schema.json", &r);
    let r = json(&["validate", p(&fixture("line_map.json"))]);
    assert_eq!((r["kind"].as_str(), r["ok"].as_bool()), (Some("map"), Some(true)));
    check_schema("validate_report.schema.json", &r);
    let r = json(&["validate", p(&fixture("point_decomposition.json"))]);
    assert_eq!(r["ok"], false);
    assert_eq!(r["report"]["missing_points"], serde_json::json!([[1, 2]]));
    check_schema("validate_report.schema.json", &r);
    assert_eq!(code(&["validate", p(&fixture("p2_fan.json"))]), 1);
}

#[test]
fn shipped_inputs_match_schemas() {
    let cases = [
        ("setup.schema.json", "conic_setup.json"),
        ("setup.schema.json", "line_setup.json"),
        ("setup.schema.json", "chain_setup.json"),
        ("setup.schema.json", "infeasible_setup.json"),
        ("points.schema.json", "repeated_points.json"),
        ("map.schema.json", "line_map.json"),
        ("complex.schema.json", "p2_fan.json"),
        ("map_complex.schema.json", "identity_map.json"),
        ("map_complex.schema.json", "ray_into_quadrant.json"),
        ("map_complex.schema.json", "eval_point.json"),
        ("map_complex.schema.json", "eval_weight_two.json"),
        ("map_complex.schema.json", "eval_chain.json"),
        ("decomposition.schema.json", "triangle_2.json"),
    ];
    for (schema, file) in cases {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
        check_schema(schema, &v);
    }
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(code(&["rigid", "/nonexistent/setup.json"]), 1);
    assert_eq!(code(&["quotient-fan", p(&fixture("p2_fan.json")), "--direction", "0,0"]), 1);
}
