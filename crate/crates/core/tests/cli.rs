use cvlab::cli::{execute, EXIT_FALSIFIED, EXIT_MALFORMED, EXIT_PRECONDITION};
use serde_json::{json, Value};

const ABS: &str = r#"{"n":1,"pieces":[{"y":["1"],"c":"0"},{"y":["-1"],"c":"0"}],"domain":"all"}"#;

fn run(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["cvlab"];
    full.extend_from_slice(args);
    let out = execute(full);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v, out.stderr)
}

fn dirichlet() -> String {
    let (code, v, _) = run(&[
        "val",
        "make",
        "dirichlet",
        "--params",
        r#"{"B":{"dim":1,"vertices":[["-1"],["1"]]}}"#,
        "--cone",
        r#"{"n":1,"A":"all","O":{"dim":1,"vertices":[["-3"],["3"]]}}"#,
    ]);
    assert_eq!(code, 0);
    v.to_string()
}

#[test]
fn conjugate_of_abs_is_interval_indicator() {
    let (code, v, _) = run(&["fn", "conj", ABS]);
    assert_eq!(code, 0);
    assert_eq!(v["pieces"], json!([{"y": ["0"], "c": "0"}]));
    assert_eq!(v["domain"]["vertices"], json!([["-1"], ["1"]]));
}

#[test]
fn eval_and_float_mode() {
    let (code, v, _) = run(&["fn", "eval", ABS, r#"["-3/2"]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], json!("3/2"));
    let (_, v, _) = run(&["--mode", "float", "fn", "eval", ABS, r#"["-3/2"]"#]);
    assert_eq!(v["value"], json!(1.5));
    assert_eq!(v["mode"], json!("float"));
}

#[test]
fn decompose_reports_zero_top_slot() {
    let z = dirichlet();
    let (code, v, _) = run(&["val", "decompose", &z, ABS]);
    assert_eq!(code, 0);
    assert_eq!(v["top_slot_zero"], json!(true));
    assert_eq!(v["components"][2]["value"], json!(["2"]));
}

#[test]
fn gw_accepts_catalog_bumps() {
    let z = dirichlet();
    let b = r#"{"shape":"hinge","center":["0"],"delta":"1/4"}"#;
    let (code, v, _) = run(&["val", "gw", &z, b, b]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], json!(["8"]));
    let bad = r#"{"shape":"blob","center":["0"],"delta":"1/4"}"#;
    let (code, _, err) = run(&["val", "gw", &z, bad, bad]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("unknown_shape"));
}

#[test]
fn error_exit_codes() {
    let (code, _, err) = run(&["fn", "conj", "{not json"]);
    assert_eq!(code, EXIT_MALFORMED);
    assert!(err.contains("malformed_input"));
    let narrow = r#"{"n":1,"pieces":[{"y":["0"],"c":"0"}],"domain":{"dim":1,"vertices":[["-1"],["1"]]}}"#;
    let (code, _, err) = run(&["val", "eval", &dirichlet(), narrow]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("cone_violation"));
}

#[test]
fn broken_kernel_is_falsified_with_reproducer() {
    let (code, z, _) = run(&["val", "make", "broken_max", "--params", r#"{"points":[["-1"],["1"]]}"#]);
    assert_eq!(code, 0);
    let (code, v, _) = run(&["--seed", "3", "val", "verify", &z.to_string(), "--trials", "40"]);
    assert_eq!(code, EXIT_FALSIFIED);
    assert!(v["report"]["violations"][0]["reproducer"]["f"].is_object());
}

#[test]
fn suite_reports_are_deterministic() {
    let a = execute(["cvlab", "--seed", "7", "suite", "run", "9"]);
    let b = execute(["cvlab", "--seed", "7", "suite", "run", "9"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["schema"], json!("cvlab/1"));
}
