//! CLI contract tests: exit codes, example outputs, CSV, and validation of
//! every subcommand's JSON against the shipped schema document.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn sievelab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sievelab"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = sievelab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn exit_codes() {
    // success
    assert_eq!(sievelab(&["tuples", "check", "0,2,6"]).status.code(), Some(0));
    // precondition violations exit 2
    assert_eq!(
        sievelab(&["irr", "count", "--q", "4", "--n", "2"]).status.code(),
        Some(2),
        "composite q"
    );
    assert_eq!(
        sievelab(&["ff-gaps", "bound", "--k0", "5", "--q", "5"]).status.code(),
        Some(2),
        "q below k0 + 1"
    );
    assert_eq!(
        sievelab(&["nf", "pairs", "--field", "sqrt:7", "--bound", "2", "--box", "5"])
            .status
            .code(),
        Some(2),
        "field off the whitelist"
    );
    // budget exhaustion exits 3
    assert_eq!(
        sievelab(&["--budget", "10", "irr", "list", "--q", "3", "--n", "9"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        sievelab(&["--budget", "100", "ff-gaps", "zcheck", "--q", "3", "--k", "2", "--d", "1", "--n", "6"])
            .status
            .code(),
        Some(3)
    );
    // usage errors exit 2 (clap convention)
    assert_eq!(sievelab(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn budget_env_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_sievelab"))
        .args(["irr", "list", "--q", "3", "--n", "9"])
        .env("SIEVELAB_BUDGET", "10")
        .current_dir(workspace_root())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // an explicit flag overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_sievelab"))
        .args(["--budget", "100000", "irr", "count", "--q", "3", "--n", "9"])
        .env("SIEVELAB_BUDGET", "10")
        .current_dir(workspace_root())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn spec_examples() {
    let v = json_of(&["tuples", "check", "0,2,6"]);
    assert_eq!(v["admissible"], true);

    let v = json_of(&["tuples", "check", "0,1"]);
    assert_eq!(v["admissible"], false);
    assert_eq!(v["witness"]["prime"], "2");

    let v = json_of(&["mk", "--k", "1", "--degree", "0"]);
    assert!((v["lower_bound"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let v = json_of(&["ff-gaps", "census", "--q", "3", "--n", "2", "--d", "0"]);
    assert_eq!(v["occurring"], 0);
    assert_eq!(v["gaps"].as_array().unwrap().len(), 0);

    let v = json_of(&["nf", "prime-test", "0,1", "--field", "sqrt:2"]);
    assert_eq!(v["prime"], true);
    assert_eq!(v["norm"], -2);
}

#[test]
fn tuple_file_input() {
    let dir = std::env::temp_dir().join("sievelab-test-tuples");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    std::fs::write(&path, "[0, 4, 6]").unwrap();
    let arg = format!("@{}", path.display());
    let v = json_of(&["tuples", "check", &arg]);
    assert_eq!(v["admissible"], true);
    assert_eq!(v["k"], 3);
}

#[test]
fn poly_tuple_inline() {
    let v = json_of(&["tuples", "check", "0;1;2", "--ring", "Fq[t]:q=5"]);
    assert_eq!(v["admissible"], true);
    let v = json_of(&["tuples", "check", "0;1", "--ring", "Fq[t]:q=2"]);
    assert_eq!(v["admissible"], false);
}

#[test]
fn census_csv_format() {
    let out = sievelab(&["--format", "csv", "ff-gaps", "census", "--q", "3", "--n", "2", "--d", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gap_poly,count"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    // polynomial keys contain commas, so they arrive quoted
    assert!(rows.iter().all(|r| r.starts_with('"')), "{rows:?}");
}

#[test]
fn byte_identical_reruns() {
    let args = ["sieve-demo", "--ring", "Z", "--tuple", "0,2", "--n", "20000", "--d0", "5"];
    let a = sievelab(&args);
    let b = sievelab(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_validate_against_schema() {
    let schema_text =
        std::fs::read_to_string(workspace_root().join("schemas/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&schema_text).unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["tuples", "check", "0,2,6"],
        vec!["tuples", "check", "0,1"],
        vec!["tuples", "find", "--k", "4"],
        vec!["tuples", "find", "--k", "3", "--ring", "Fq[t]:q=3"],
        vec!["tuples", "lift", "0,2,6", "--field", "sqrt:5"],
        vec!["tuples", "verify-engelsma"],
        vec!["tuples", "verify-engelsma", "--path", "no/such/file.json"],
        vec!["irr", "count", "--q", "3", "--n", "4"],
        vec!["irr", "list", "--q", "2", "--n", "4"],
        vec!["irr", "list", "--q", "2", "--n", "3", "--all"],
        vec!["irr", "test", "1,0,1", "--q", "3"],
        vec!["sieve-demo", "--ring", "Z", "--tuple", "0,2", "--n", "10000", "--d0", "5"],
        vec!["sieve-demo", "--ring", "Fq[t]:q=3", "--tuple", "0;1", "--n", "729", "--r-bound", "9", "--d0", "4"],
        vec!["ggpy-check", "--ring", "Z", "--z", "1000"],
        vec!["ggpy-check", "--ring", "Fq[t]:q=3", "--z", "243", "--g", "x"],
        vec!["lod-measure", "--q", "3", "--n", "6", "--max-degree", "2"],
        vec!["mk", "--k", "3", "--degree", "4"],
        vec!["ff-gaps", "census", "--q", "3", "--n", "3", "--d", "1"],
        vec!["ff-gaps", "monomials", "--q", "5", "--n", "2", "--d", "1"],
        vec!["ff-gaps", "twist", "--q", "3", "--f1", "1,2,0,1", "--f2", "2,2,0,1", "--target-a", "1"],
        vec!["ff-gaps", "zcheck", "--q", "3", "--k", "2", "--d", "0", "--n", "2"],
        vec!["ff-gaps", "bound", "--k0", "105", "--q", "107"],
        vec!["nf", "pairs", "--field", "sqrt:2", "--bound", "5", "--box", "60"],
        vec!["nf", "prime-test", "3,0", "--field", "sqrt:2"],
    ];
    for args in commands {
        let v = json_of(&args);
        if let Err(msg) = validate(&schema, &schema, &v) {
            panic!("{args:?} violates the schema: {msg}\nreport: {v}");
        }
    }
}

/// Minimal validator for the dialect the shipped schema uses: type (with
/// null alternatives), const, enum, properties + required +
/// additionalProperties, items with min/maxItems, oneOf, and $defs refs.
fn validate(root: &Value, schema: &Value, value: &Value) -> Result<(), String> {
    if let Some(r) = schema.get("$ref") {
        let path = r.as_str().unwrap().strip_prefix("#/").unwrap();
        let mut node = root;
        for part in path.split('/') {
            node = node
                .get(part)
                .ok_or_else(|| format!("dangling $ref {path}"))?;
        }
        return validate(root, node, value);
    }
    if let Some(variants) = schema.get("oneOf") {
        let hits: Vec<usize> = variants
            .as_array()
            .unwrap()
            .iter()
            .enumerate()
            .filter(|(_, s)| validate(root, s, value).is_ok())
            .map(|(i, _)| i)
            .collect();
        return match hits.len() {
            1 => Ok(()),
            0 => Err("no oneOf variant matches".into()),
            _ => Err(format!("ambiguous oneOf variants {hits:?}")),
        };
    }
    if let Some(c) = schema.get("const") {
        if c != value {
            return Err(format!("expected const {c}, got {value}"));
        }
    }
    if let Some(e) = schema.get("enum") {
        if !e.as_array().unwrap().contains(value) {
            return Err(format!("{value} not in enum {e}"));
        }
    }
    if let Some(t) = schema.get("type") {
        let names: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|v| v.as_str().unwrap()).collect(),
            _ => return Err("bad type clause".into()),
        };
        let matches = names.iter().any(|&name| match name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            "integer" => value.is_i64() || value.is_u64(),
            "number" => value.is_number(),
            other => panic!("unsupported type {other}"),
        });
        if !matches {
            return Err(format!("{value} is not of type {names:?}"));
        }
    }
    if let Some(obj) = value.as_object() {
        if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(root, sub, v).map_err(|e| format!("{key}: {e}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("unexpected property {key}"));
                    }
                }
            }
            if let Some(req) = schema.get("required").and_then(|r| r.as_array()) {
                for key in req {
                    if !obj.contains_key(key.as_str().unwrap()) {
                        return Err(format!("missing required property {key}"));
                    }
                }
            }
        }
        if let Some(ap) = schema.get("additionalProperties") {
            if ap.is_object() {
                for (key, v) in obj {
                    validate(root, ap, v).map_err(|e| format!("{key}: {e}"))?;
                }
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(items) = schema.get("items") {
            for (i, v) in arr.iter().enumerate() {
                validate(root, items, v).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
        if let Some(min) = schema.get("minItems").and_then(|m| m.as_u64()) {
            if (arr.len() as u64) < min {
                return Err(format!("fewer than {min} items"));
            }
        }
        if let Some(max) = schema.get("maxItems").and_then(|m| m.as_u64()) {
            if (arr.len() as u64) > max {
                return Err(format!("more than {max} items"));
            }
        }
    }
    Ok(())
}

#[test]
fn float_format_is_17_significant_digits() {
    let out = sievelab(&["mk", "--k", "1", "--degree", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    // lower_bound prints as d.dddddddddddddddde...
    assert!(
        text.contains("\"lower_bound\":1.0000000000000000e0"),
        "{text}"
    );
}
