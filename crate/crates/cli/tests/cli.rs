//! End-to-end runs of the command line through `run_args`.

use ffl_cli::report::report_schema;
use ffl_cli::{run_args, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_GUARD, EXIT_OK};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let mut v = vec!["ffl"];
    v.extend_from_slice(args);
    let o = run_args(v);
    (o.code, o.json)
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, s) = run(args);
    (code, serde_json::from_str(&s).unwrap_or_else(|e| panic!("bad json ({e}): {s}")))
}

// Minimal draft 2020-12 validator covering the keywords the report schema uses.
fn resolve<'a>(root: &'a Value, r: &str) -> &'a Value {
    let path = r.strip_prefix("#/").expect("local ref");
    path.split('/').fold(root, |node, key| &node[key])
}

fn type_ok(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        _ => panic!("unknown type {t}"),
    }
}

fn validate(root: &Value, schema: &Value, v: &Value, at: &str, errs: &mut Vec<String>) {
    let Some(s) = schema.as_object() else { return };
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        validate(root, resolve(root, r), v, at, errs);
    }
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(t) => type_ok(t, v),
            Value::Array(ts) => ts.iter().any(|t| type_ok(t.as_str().unwrap(), v)),
            _ => panic!("bad type keyword"),
        };
        if !ok {
            errs.push(format!("{at}: expected type {t}, got {v}"));
            return;
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            errs.push(format!("{at}: expected {c}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            errs.push(format!("{at}: {v} not in {e:?}"));
        }
    }
    if let (Some(min), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            errs.push(format!("{at}: {x} < {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = s.get("properties").and_then(Value::as_object);
        if let Some(req) = s.get("required").and_then(Value::as_array) {
            for k in req {
                if !obj.contains_key(k.as_str().unwrap()) {
                    errs.push(format!("{at}: missing {k}"));
                }
            }
        }
        for (k, x) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => validate(root, sub, x, &format!("{at}/{k}"), errs),
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errs.push(format!("{at}: unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(root, items, x, &format!("{at}/{i}"), errs);
        }
    }
    if let Some(all) = s.get("allOf").and_then(Value::as_array) {
        for sub in all {
            validate(root, sub, v, at, errs);
        }
    }
    if let Some(one) = s.get("oneOf").and_then(Value::as_array) {
        let n = one
            .iter()
            .filter(|sub| {
                let mut e = Vec::new();
                validate(root, sub, v, at, &mut e);
                e.is_empty()
            })
            .count();
        if n != 1 {
            errs.push(format!("{at}: {n} oneOf branches match"));
        }
    }
    if let Some(cond) = s.get("if") {
        let mut e = Vec::new();
        validate(root, cond, v, at, &mut e);
        if e.is_empty() {
            if let Some(then) = s.get("then") {
                validate(root, then, v, at, errs);
            }
        }
    }
}

fn schema_errors(doc: &Value) -> Vec<String> {
    let schema = report_schema();
    let mut errs = Vec::new();
    validate(&schema, &schema, doc, "#", &mut errs);
    errs
}

#[test]
fn validator_rejects_malformed_reports() {
    let (_, mut doc) = run_json(&["charpoly", "--f", "theta"]);
    assert!(schema_errors(&doc).is_empty());
    doc["result"]["p"] = Value::String("x".into());
    assert!(!schema_errors(&doc).is_empty());
    let (_, mut doc) = run_json(&["irreducibles", "--dmax", "1"]);
    doc["extra"] = Value::Null;
    assert!(!schema_errors(&doc).is_empty());
}

#[test]
fn reports_follow_the_schema() {
    let cases: &[&[&str]] = &[
        &["irreducibles", "--dmax", "2"],
        &["charpoly", "--f", "theta^2+1"],
        &["regulator", "--kind", "sym2", "--precision", "6"],
        &["regulator", "--kind", "alt2", "--pipeline", "closed", "--precision", "6"],
        &["lvalue", "--series", "twisted_zeta", "--s", "2", "--cutoff", "2"],
        &["special-value", "--kind", "alt2", "--precision", "6"],
        &["mu", "--f", "theta", "--m-max", "4"],
        &["order-check", "--kind", "alt2"],
        &["unknown-command"],
        &["euler-check", "--w", "11"],
    ];
    for args in cases {
        let (_, doc) = run_json(args);
        let errs = schema_errors(&doc);
        assert!(errs.is_empty(), "{args:?}: {errs:?}");
    }
}

#[test]
fn schema_command_prints_the_schema() {
    let (code, doc) = run_json(&["schema"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc, report_schema());
}

#[test]
fn unknown_subcommand_is_a_config_error() {
    let (code, doc) = run_json(&["frobnicate"]);
    assert_eq!(code, EXIT_CONFIG);
    assert_eq!(doc["exit_code"], 2);
    assert_eq!(doc["class"], "config");
}

#[test]
fn help_exits_cleanly() {
    let (code, text) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("charpoly"));
}

#[test]
fn unsupported_characteristic_is_a_config_error() {
    let (code, doc) = run_json(&["regulator", "--q", "2", "--precision", "4"]);
    assert_eq!(code, EXIT_CONFIG, "{doc}");
}

#[test]
fn reducible_prime_is_rejected() {
    let (code, doc) = run_json(&["charpoly", "--f", "theta^2"]);
    assert_eq!(code, EXIT_CONFIG, "{doc}");
}

#[test]
fn twisted_zeta_at_cutoff_zero_is_one() {
    let (code, doc) = run_json(&["lvalue", "--series", "twisted_zeta", "--s", "2", "--cutoff", "0"]);
    assert_eq!(code, EXIT_OK);
    let v = &doc["result"]["value"];
    assert_eq!(v["coefficients"], serde_json::json!([1]));
    assert_eq!(v["top_exponent"], 0);
}

#[test]
fn carlitz_charpoly_at_theta() {
    let (code, doc) = run_json(&["charpoly", "--phi", "1", "--f", "theta"]);
    assert_eq!(code, EXIT_OK);
    // P_f(X) = X - theta over F_3
    assert_eq!(doc["result"]["p"], serde_json::json!([[0, 2], [1]]));
    assert_eq!(doc["result"]["p_display"], "X + 2*theta");
}

#[test]
fn guard_failure_exits_three() {
    let (code, doc) = run_json(&["euler-check", "--w", "11"]);
    assert_eq!(code, EXIT_GUARD, "{doc}");
    assert_eq!(doc["class"], "guard");
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let base = ["lvalue", "--series", "goss_dual", "--cutoff", "3"];
    let (c1, one) = run(&[&base[..], &["--workers", "1"]].concat());
    let (c4, four) = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(c1, EXIT_OK);
    assert_eq!(c1, c4);
    assert_eq!(one, four);
}

#[test]
fn config_file_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"p":5,"phi":["theta","1"],"precision":4}"#).unwrap();
    let out = dir.path().join("out.json");
    let (code, doc) = run_json(&["irreducibles", "--config", cfg.to_str().unwrap(), "--dmax", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["field"]["q"], 5);
    assert_eq!(doc["result"]["degrees"][0]["count"], 5);

    // the binary writes to --out and nothing to stdout
    let bin = env!("CARGO_BIN_EXE_ffl");
    let status = std::process::Command::new(bin)
        .args(["irreducibles", "--config", cfg.to_str().unwrap(), "--dmax", "1", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, doc);
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"p":3,"phi":["1"],"bogus":1}"#).unwrap();
    let (code, _) = run_json(&["irreducibles", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, EXIT_CONFIG);
}

#[test]
fn failed_check_exit_code_is_distinct() {
    assert_ne!(EXIT_CHECK_FAILED, EXIT_OK);
    assert_ne!(EXIT_CHECK_FAILED, EXIT_CONFIG);
}

#[test]
fn tensor_square_special_value_ignores_psi() {
    let (code, doc) = run_json(&["special-value", "--kind", "tensor2", "--precision", "6"]);
    assert_eq!(code, EXIT_OK, "{doc}");
    assert_eq!(doc["result"]["candidate"], serde_json::json!([1]));
    assert!(schema_errors(&doc).is_empty());
}
