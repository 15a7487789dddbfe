//! End-to-end checks of the installed binary: golden output, exit codes,
//! byte-level determinism, and JSON shapes against docs/schema.json.

use std::process::{Command, Output};

fn resline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn pmk_golden_line() {
    let out = resline(&["pmk", "-m", "0", "-k", "2", "--lambda", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1/2*x0*x2 - 1/8*x1^2");
}

#[test]
fn zero_lambda_is_a_usage_error() {
    let out = resline(&["pmk", "-m", "0", "-k", "1", "--lambda", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("lambda must be nonzero"), "stderr: {err}");
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = resline(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_qft_suite_exits_0() {
    let out = resline(&["verify", "--suite", "qft"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[PASS] suite qft"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = resline(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec![
            "pmk", "-m", "2", "-k", "3", "--lambda", "1/2", "--format", "json",
        ],
        vec![
            "width",
            "-p",
            "3",
            "--series",
            "1:1,2:1,3:1",
            "--prec",
            "7",
            "--trials",
            "25",
        ],
        vec!["qft", "--kmax", "5", "--verify"],
        vec!["verify", "--suite", "golden", "--format", "json"],
        vec!["verify", "--suite", "fres"],
    ] {
        let a = resline(&args);
        let b = resline(&args);
        assert_eq!(a.stdout, b.stdout, "output differs for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

mod schema {
    use serde_json::Value;

    /// Minimal structural validator for the subset of JSON Schema used
    /// in docs/schema.json: type, required, properties, items, enum and
    /// local $ref.
    pub fn validate(root: &Value, schema: &Value, value: &Value, path: &str) -> Result<(), String> {
        if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
            let target = resolve(root, reference)
                .ok_or_else(|| format!("{path}: dangling $ref {reference}"))?;
            return validate(root, target, value, path);
        }
        if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
            if !allowed.contains(value) {
                return Err(format!("{path}: {value} not in enum"));
            }
        }
        if let Some(ty) = schema.get("type").and_then(Value::as_str) {
            let ok = match ty {
                "object" => value.is_object(),
                "array" => value.is_array(),
                "string" => value.is_string(),
                "integer" => value.is_i64() || value.is_u64(),
                "number" => value.is_number(),
                "boolean" => value.is_boolean(),
                other => return Err(format!("{path}: unsupported type {other}")),
            };
            if !ok {
                return Err(format!("{path}: expected {ty}, got {value}"));
            }
        }
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for key in required {
                let key = key.as_str().unwrap();
                if value.get(key).is_none() {
                    return Err(format!("{path}: missing required field '{key}'"));
                }
            }
        }
        if let Some(props) = schema.get("properties").and_then(Value::as_object) {
            for (key, sub) in props {
                if let Some(v) = value.get(key) {
                    if !v.is_null() {
                        validate(root, sub, v, &format!("{path}.{key}"))?;
                    }
                }
            }
        }
        if let Some(items) = schema.get("items") {
            if let Some(arr) = value.as_array() {
                for (i, v) in arr.iter().enumerate() {
                    validate(root, items, v, &format!("{path}[{i}]"))?;
                }
            }
        }
        Ok(())
    }

    fn resolve<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
        let mut node = root;
        for part in reference.trim_start_matches("#/").split('/') {
            node = node.get(part)?;
        }
        Some(node)
    }
}

#[test]
fn json_outputs_validate_against_shipped_schema() {
    let schema_text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema.json"),
    )
    .expect("schema shipped in docs/");
    let root: serde_json::Value = serde_json::from_str(&schema_text).unwrap();

    let cases: Vec<(&str, Vec<&str>)> = vec![
        (
            "pmk",
            vec![
                "pmk", "-m", "1", "-k", "2", "--lambda", "-2", "--format", "json",
            ],
        ),
        (
            "act",
            vec![
                "act",
                "--lambda",
                "-2",
                "--mu",
                "-6",
                "--coeffs",
                "1,1,1,1,1",
                "--level",
                "1",
                "--g",
                "1,-1",
                "--format",
                "json",
            ],
        ),
        (
            "normal-form",
            vec![
                "normal-form",
                "-m",
                "0",
                "--lambda",
                "1",
                "--mu",
                "1/3",
                "--coeffs",
                "1,1,1,1",
                "--format",
                "json",
            ],
        ),
        (
            "fres",
            vec![
                "fres", "-k", "2", "--lambda", "-2", "--coeffs", "1,1,1", "--format", "json",
            ],
        ),
        (
            "pair",
            vec![
                "pair",
                "--lambda1",
                "-2",
                "--mu1",
                "-3",
                "--coeffs1",
                "1,0,0,0",
                "--lambda2",
                "1",
                "--mu2",
                "2",
                "--coeffs2",
                "1,0,0,0",
                "--format",
                "json",
            ],
        ),
        (
            "lucas",
            vec![
                "lucas", "-p", "2", "-k", "-1", "--parts", "5", "--format", "json",
            ],
        ),
        (
            "counterexample",
            vec!["counterexample", "-p", "2", "-N", "16", "--format", "json"],
        ),
        ("qft", vec!["qft", "--kmax", "3", "--format", "json"]),
        (
            "verify",
            vec!["verify", "--suite", "qft", "--format", "json"],
        ),
    ];

    for (name, args) in cases {
        let out = resline(&args);
        assert_eq!(out.status.code(), Some(0), "{name} failed: {args:?}");
        let value: serde_json::Value =
            serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{name}: bad JSON: {e}"));
        let schema = &root["outputs"][name];
        assert!(!schema.is_null(), "schema for {name} missing");
        schema::validate(&root, schema, &value, name)
            .unwrap_or_else(|e| panic!("{name}: schema violation: {e}"));
    }
}
