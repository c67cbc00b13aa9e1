//! End-to-end runs of the `bergman` binary; every JSON document is validated
//! against the shipped schema for its command.

use std::path::PathBuf;
use std::process::Command;

use jsonschema::Resource;
use serde_json::Value;

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn validate(schema: &str, doc: &Value) {
    let common = load("common.schema.json");
    let validator = jsonschema::options()
        .with_resource(
            "https://example.org/bergman/schemas/common.schema.json",
            Resource::from_contents(common).unwrap(),
        )
        .build(&load(schema))
        .unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{doc:#}");
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_bergman"))
        .arg("--output")
        .arg("json")
        .args(args)
        .output()
        .unwrap();
    let doc = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), doc)
}

#[test]
fn classify_euler_on_ball() {
    let (code, doc) = run(&["classify", "--domain", "ball", "--N", "2", "--xi", "0", "--op", "z1*d1 + z2*d2"]);
    assert_eq!(code, 0);
    validate("classify.schema.json", &doc);
    assert_eq!(doc["c"], "-2");
    assert_eq!(doc["symmetric"], true);
    let coefficients = doc["basis_coefficients"].as_object().unwrap();
    for (tag, value) in coefficients {
        let want = if tag.starts_with("X1:") { "1/3" } else { "0" };
        assert_eq!(value, want, "{tag}");
    }
}

#[test]
fn symcheck_of_partial_has_witness() {
    let (code, doc) = run(&["symcheck", "--domain", "ball", "--N", "1", "--xi", "0", "--op", "d1"]);
    assert_eq!(code, 0);
    validate("symcheck.schema.json", &doc);
    assert_eq!(doc["symmetric"], false);
    let witnesses = doc["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["n"] == serde_json::json!([1]) && w["m"] == serde_json::json!([0])));
}

#[test]
fn normalized_cross_term() {
    let (code, doc) = run(&[
        "innerprod", "--domain", "mball", "--xi", "0", "--n", "1,0,0,1", "--m", "0,1,1,0", "--normalized",
    ]);
    assert_eq!(code, 0);
    validate("innerprod.schema.json", &doc);
    assert_eq!(doc["value"], "-1/60");
}

#[test]
fn raw_inner_product_carries_unit() {
    let (_, doc) = run(&["innerprod", "--domain", "mball", "--xi", "0", "--n", "0,0,0,0", "--m", "0,0,0,0"]);
    validate("innerprod.schema.json", &doc);
    assert_eq!(doc["value"], "1/12*pi^4");
    assert_eq!(doc["unit"], "pi^4");
}

#[test]
fn refusal_exits_with_four() {
    let (code, doc) = run(&["classify", "--domain", "mball", "--xi", "0", "--op", "z4*d1"]);
    assert_eq!(code, 4);
    validate("classify.schema.json", &doc);
    assert_eq!(doc["symmetric"], false);
    assert!(doc["violations"][0].as_str().unwrap().starts_with("(4)"));
}

#[test]
fn matrix_ball_classification_reports_offset_check() {
    let (code, doc) = run(&["classify", "--domain", "mball", "--xi", "1", "--op", "z1*d1 + z2*d2"]);
    assert_eq!(code, 0);
    validate("classify.schema.json", &doc);
    assert_eq!(doc["offset_check"]["agrees"], false);
}

#[test]
fn pi_and_euler_outputs() {
    let (code, doc) = run(&["pi", "--algebra", "su(1,1)", "--xi", "0", "--element", "X5:1"]);
    assert_eq!(code, 0);
    validate("pi.schema.json", &doc);
    assert_eq!(doc["pretty"], "2*i*z1 + (i + i*z1^2)*d1");

    let (code, doc) = run(&["euler", "--N", "1", "--xi", "0", "--c", "1", "--bounds"]);
    assert_eq!(code, 0);
    validate("euler_bounds.schema.json", &doc);
    assert_eq!(doc["inf_ratio"], "1");
    assert_eq!(doc["inf_attained_at"], 0);
    assert_eq!(doc["sup_ratio"], "6");
    assert_eq!(doc["sup_attained_at"], Value::Null);

    let (code, doc) = run(&["euler", "--N", "2", "--xi", "0", "--c", "1", "--apply", "z1*z2"]);
    assert_eq!(code, 0);
    validate("polynomial.schema.json", &doc);
    assert_eq!(doc["pretty"], "3*z1*z2");
}

#[test]
fn oracle_and_selftest_outputs() {
    let args = ["oracle", "--domain", "ball", "--N", "1", "--xi", "0", "--n", "1", "--m", "1", "--samples", "50000", "--seed", "9"];
    let (code, first) = run(&args);
    assert_eq!(code, 0);
    validate("oracle.schema.json", &first);
    let (_, second) = run(&args);
    assert_eq!(first, second);

    let (code, doc) = run(&["selftest", "--quick"]);
    assert_eq!(code, 0);
    validate("selftest.schema.json", &doc);
}

#[test]
fn error_exit_codes() {
    let cases: [(&[&str], i32); 5] = [
        (&["symcheck", "--domain", "ball", "--N", "1", "--xi", "0", "--op", "d1*d1"], 2),
        (&["symcheck", "--domain", "ball", "--N", "1", "--xi", "0", "--op", "z2"], 2),
        (&["innerprod", "--domain", "ball", "--N", "1", "--xi", "-1", "--n", "1", "--m", "1"], 3),
        (&["innerprod", "--domain", "ball", "--N", "1", "--xi", "0.5", "--n", "1", "--m", "1"], 3),
        (&["euler", "--N", "1", "--xi", "0", "--c", "-2", "--bounds"], 3),
    ];
    for (args, want) in cases {
        let (code, doc) = run(args);
        assert_eq!(code, want, "{args:?}");
        validate("error.schema.json", &doc);
    }
}
