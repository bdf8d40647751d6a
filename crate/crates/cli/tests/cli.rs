use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use qplane_cli::{run_args, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn schema_for(definition: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas/output.schema.json");
    let mut schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let root = schema.as_object_mut().unwrap();
    root.remove("oneOf");
    root.insert("$ref".into(), Value::String(format!("#/definitions/{definition}")));
    JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(definition: &str, instance: &Value) {
    let schema = schema_for(definition);
    let msgs: Vec<String> = match schema.validate(instance) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{definition} output does not match its schema:\n{}\n{instance:#}", msgs.join("\n"));
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let out = run_args(args.iter().copied().chain(["--format", "json"]));
    assert!(out.stderr.is_empty(), "unexpected stderr: {}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).expect("valid JSON"))
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qplane"));
    cmd.env_remove("QPLANE_MAX_DEGREE");
    cmd
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qplane-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_eb0_exits_zero() {
    let out = bin().args(["verify", "--family", "EB0", "--param", "b0=1", "--max-degree", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("passed"));
}

#[test]
fn classify_all_json_counts() {
    let out = bin().args(["classify", "--all", "--format", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["empty"], 24);
    assert_eq!(v["nonempty"], 6);
    assert_eq!(v["total"], 30);
    assert_valid("classify_all", &v);
}

#[test]
fn act_standard_e_of_y_is_x() {
    let out = bin().args(["act", "--family", "Standard", "--param", "tau=1", "e(y)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "x");
}

#[test]
fn act_evaluates_compound_expressions() {
    let text = |args: &[&str]| {
        let out = run_args(args.iter().copied());
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        out.stdout.trim().to_string()
    };
    assert_eq!(text(&["act", "--family", "Standard", "--param", "tau=q^2", "e(y)"]), "q^2*x");
    assert_eq!(text(&["act", "--family", "EB0", "y*x - q*x*y"]), "0");
    // [e, f] acts on a weight-q vector as (q - q^-1)/(q - q^-1) = 1.
    assert_eq!(text(&["act", "--family", "EB0", "e(f(x)) - f(e(x))"]), "x");
    assert_eq!(text(&["act", "--family", "EB0", "e(f(x^2)) - f(e(x^2))"]), "((1+q^2)/q)*x^2");
    assert_eq!(text(&["act", "--family", "FC0", "--param", "c0=2", "f(x)"]), "2");
}

#[test]
fn verify_reads_max_degree_from_environment() {
    let out = bin()
        .env("QPLANE_MAX_DEGREE", "2")
        .args(["verify", "--family", "Standard", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["max_degree"], 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify"],
        vec!["verify", "--family", "Nope"],
        vec!["verify", "--family", "EB0", "--param", "b0"],
        vec!["verify", "--family", "EB0", "--param", "b0=0"],
        vec!["verify", "--family", "EB0", "--param", "tau=1"],
        vec!["act", "--family", "EB0", "x^-1"],
        vec!["act", "--family", "EB0", "x +"],
        vec!["classify"],
        vec!["classify", "--label", "[0*/00]"],
        vec!["frobnicate"],
    ] {
        let out = run_args(args.iter().copied());
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = bin().args(["verify", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}

#[test]
fn corrupted_action_file_fails_verification() {
    let good = temp_file("good.json", r#"{"alpha":"q","beta":"q^-1","e_x":"0","e_y":"x","f_x":"y","f_y":"0"}"#);
    let bad = temp_file("bad.json", r#"{"alpha":"q","beta":"q^-1","e_x":"0","e_y":"x","f_x":"-y","f_y":"0"}"#);
    let ok = run_args(["verify", "--action-file", good.to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stderr);

    let (code, v) = json_run(&["verify", "--action-file", bad.to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(v["passed"], false);
    assert!(!v["failures"].as_array().unwrap().is_empty());
    assert_valid("verify", &v);

    let (code, v) = json_run(&["act", "--action-file", good.to_str().unwrap(), "f(x)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"], "y");
    assert_valid("act", &v);

    let garbage = temp_file("garbage.json", "{");
    assert_eq!(run_args(["verify", "--action-file", garbage.to_str().unwrap()]).code, EXIT_USAGE);
    assert_eq!(run_args(["decompose", "--action-file", good.to_str().unwrap()]).code, EXIT_USAGE);
    for p in [good, bad, garbage] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn verify_json_matches_schema() {
    for family in ["Trivial", "Standard", "EB0", "FC0", "EA0", "FD0"] {
        let (code, v) = json_run(&["verify", "--family", family, "--max-degree", "3"]);
        assert_eq!(code, EXIT_OK);
        assert_valid("verify", &v);
    }
}

#[test]
fn classify_label_json_matches_schema() {
    let (_, v) = json_run(&["classify", "--label", "[0*/00; 00/00]"]);
    assert_eq!(v["kind"], "nonempty");
    assert_eq!(v["family"], "EB0");
    assert_valid("classify_label", &v);
    let (_, v) = json_run(&["classify", "--label", "[00/00; *0/00]"]);
    assert_eq!(v["kind"], "empty");
    assert_valid("classify_label", &v);
    let (_, v) = json_run(&["classify", "--label", "[**/00; 00/00]"]);
    assert_eq!(v["kind"], "excluded");
    assert_valid("classify_label", &v);
}

#[test]
fn decompose_json_matches_schema() {
    for (family, extra) in [("Standard", None), ("EB0", None), ("FD0", Some("s=1"))] {
        let mut args = vec!["decompose", "--family", family, "--cutoff", "4", "--window", "4"];
        if let Some(p) = extra {
            args.extend(["--param", p]);
        }
        let (code, v) = json_run(&args);
        assert_eq!(code, EXIT_OK, "{family}");
        assert_eq!(v["passed"], true);
        assert_valid("decompose", &v);
    }
}

#[test]
fn classical_json_matches_schema() {
    let (code, v) = json_run(&["classical", "--family", "EB0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["limit"]["h"]["y"], -2);
    assert_eq!(v["limit"]["f"]["y"], "-y^2");
    assert_valid("classical", &v);

    let (code, v) = json_run(&["classical", "--family", "Trivial", "--param", "sign_y=-1"]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(v["no_limit"]["kind"], "weight_not_q_power");
    assert_valid("classical", &v);
}

#[test]
fn report_json_matches_schema() {
    let (code, v) = json_run(&["report", "--family", "EA0", "--param", "s=1", "--param", "t=q", "--max-degree", "4", "--window", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["passed"], true);
    assert_eq!(v["classification"]["family"], "EA0");
    assert_valid("report", &v);

    // A sign-flipped trivial action has no classical limit, which is expected.
    let (code, v) = json_run(&["report", "--family", "Trivial", "--param", "sign_x=-1", "--max-degree", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_valid("report", &v);
}

#[test]
fn text_report_mentions_every_section() {
    let out = run_args(["report", "--family", "FC0", "--max-degree", "3", "--window", "3"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    for section in ["action:", "label:", "phi:", "axioms:", "classical limit:", "composition series:"] {
        assert!(out.stdout.contains(section), "missing {section}");
    }
}
