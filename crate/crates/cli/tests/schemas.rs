//! Real CLI outputs validated against docs/tfzero.schema.json.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn schema_for(def: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/tfzero.schema.json");
    let mut root: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let obj = root.as_object_mut().unwrap();
    obj.remove("$id");
    obj.insert("$ref".into(), Value::String(format!("#/$defs/{def}")));
    jsonschema::validator_for(&root).unwrap()
}

fn assert_valid(def: &str, doc: &Value) {
    let v = schema_for(def);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{def}: {errors:?}");
}

fn run(dir: &Path, args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_tfzero"))
        .args(args)
        .current_dir(dir)
        .env_remove("TFZERO_THREADS")
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn parse(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn function_spec_examples_validate() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/function_specs.example.json");
    let examples: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    for ex in &examples {
        assert_valid("function_spec", ex);
        let spec: tfzero::FunctionSpec = serde_json::from_value(ex.clone()).unwrap();
        spec.validate().unwrap();
    }
    let families: std::collections::BTreeSet<_> = examples.iter().map(|e| e["family"].as_str().unwrap()).collect();
    assert_eq!(families.len(), 10);
}

#[test]
fn command_outputs_validate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let small = "-2,2,21,-2,2,21";
    std::fs::write(
        d.join("oracle.json"),
        r#"{"transform":"ambiguity","f":{"family":"one_sided_exp","a":1},"g":{"family":"gaussian","a":[1,0]}}"#,
    )
    .unwrap();
    std::fs::write(d.join("kernel.json"), r#"{"formula":"gumbel","a":1,"b":1,"c":2,"d":1}"#).unwrap();

    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("scan_output", vec!["scan", "--pair", "gauss", "--grid", small]),
        ("scan_output", vec!["scan", "--pair", "sym_exp", "--grid", small]),
        ("scan_output", vec!["scan", "--spec", "oracle.json", "--grid", small]),
        ("scan_output", vec!["scan", "--spec", "kernel.json", "--grid", small]),
        ("hurwitz_output", vec!["hurwitz", "--An", "5"]),
        ("hurwitz_output", vec!["hurwitz", "--coeffs", "1,0,-1"]),
        ("polyb_output", vec!["polyb", "--P", "1,0.5", "--Q", "0,1", "--scan", "--grid", "-3,3,31,-3,3,31"]),
        ("polyb_output", vec!["polyb", "--P", "1", "--Q", "1"]),
        ("stepfn_output", vec!["stepfn", "--mode", "lp", "--grid", "-1,1,21,-2,0,21"]),
        ("stepfn_output", vec!["stepfn", "--mode", "monotone", "--grid", "0,1,21,-1,1,21"]),
        ("run_config", vec!["--print-config", "scan", "--pair", "sym_exp"]),
        ("run_config", vec!["--print-config", "polyb", "--P", "1", "--Q", "1"]),
        ("run_config", vec!["--print-config", "reproduce", "ex3_1"]),
    ];
    for (def, args) in cases {
        assert_valid(def, &parse(&run(d, &args)));
    }
}

#[test]
fn verdicts_validate() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["ex3_1", "sec4_hurwitz", "sec7_lp"] {
        run(dir.path(), &["reproduce", id, "--out-dir", "art"]);
        let doc = parse(&std::fs::read(dir.path().join(format!("art/{id}.json"))).unwrap());
        assert_valid("verdict", &doc);
    }
}
