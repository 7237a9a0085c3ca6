use std::process::{Command, Output};

use meixner_core::algebra::text::parse_rational;
use meixner_core::{HypergeometricExpansion, MeixnerPoint, MeixnerSpec, MultiIndex, Polynomial, Rational};
use serde_json::Value;

fn meixner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meixner"))
        .args(args)
        .env_remove("MEIXNER_PRECISION_DIGITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn construct_geometric() {
    let out = meixner(&["construct", "--family", "geometric:1/2,2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["point"]["c0"], "1/4");
    assert_eq!(
        v["point"]["U"],
        serde_json::json!([["1", "1", "1"], ["1", "1", "2"], ["1", "2", "0"]])
    );
    assert_eq!(v["valid"], true);
}

#[test]
fn construct_gram_one_dimensional() {
    let v = json(&meixner(&["construct", "--family", "gram:1/3"]));
    assert_eq!(v["point"]["U"], serde_json::json!([["1", "1"], ["1", "3"]]));
}

#[test]
fn construct_degenerate_weights_fails() {
    let out = meixner(&["construct", "--family", "triangular:1/2,1/2"]);
    assert!(!out.status.success());
}

#[test]
fn construct_reports_invalid_spec() {
    let v = json(&meixner(&["construct", "--family", "geometric:1/2,2"]));
    let mut point = v["point"].clone();
    point["U"][2][2] = Value::String("1".into());
    let out = meixner(&["construct", "--spec", &point.to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["report"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn polys_listing() {
    let v = json(&meixner(&["polys", "--family", "gram:1/3", "--beta", "1", "--maxdeg", "1"]));
    let polys = v["polynomials"].as_array().unwrap();
    assert_eq!(polys.len(), 2);
    let p1 = Polynomial::from_json(1, &polys[1]["poly"]).unwrap();
    let mut expected = Polynomial::constant(1, Rational::from_integer(1.into()));
    expected.add_term(MultiIndex::from([1]), Rational::from_integer((-2).into()));
    assert_eq!(p1, expected);

    let v = json(&meixner(&["polys", "--family", "geometric:1/2,2", "--maxdeg", "0"]));
    assert_eq!(v["polynomials"].as_array().unwrap().len(), 1);
}

#[test]
fn polys_round_trip_against_library() {
    let out = meixner(&["polys", "--family", "triangular:1/3,1/4", "--beta", "3/2", "--maxdeg", "2"]);
    let v = json(&out);
    let point = MeixnerPoint::family_triangular(&[
        parse_rational("1/3").unwrap(),
        parse_rational("1/4").unwrap(),
    ])
    .unwrap();
    let spec = MeixnerSpec::new(point, parse_rational("3/2").unwrap()).unwrap();
    for entry in v["polynomials"].as_array().unwrap() {
        let n: MultiIndex = serde_json::from_value(entry["n"].clone()).unwrap();
        let p = Polynomial::from_json(2, &entry["poly"]).unwrap();
        let expansion = HypergeometricExpansion::new(&spec, &n);
        for x in MultiIndex::cube(2, 3) {
            let pt: Vec<Rational> = x.entries().iter().map(|&k| Rational::from_integer(k.into())).collect();
            assert_eq!(p.eval(&pt).unwrap(), expansion.eval_lattice(&x));
        }
    }
}

#[test]
fn verify_geometric_passes_and_is_deterministic() {
    let args = ["verify", "--family", "geometric:1/2,2", "--beta", "3/2", "--maxdeg", "3", "--grid", "4"];
    let a = meixner(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    let b = meixner(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_unchecked_corruption_fails_with_witness() {
    let v = json(&meixner(&["construct", "--family", "geometric:1/2,2"]));
    let mut point = v["point"].clone();
    point["U"][1][2] = Value::String("3".into());
    let spec = point.to_string();
    let rejected = meixner(&["verify", "--spec", &spec]);
    assert_eq!(rejected.status.code(), Some(2));
    let out = meixner(&["verify", "--spec", &spec, "--unchecked", "--maxdeg", "2", "--grid", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failing = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["pass"] == false)
        .expect("a failing check");
    assert!(failing.get("witness").is_some());
}

#[test]
fn verify_one_dimensional_includes_classical() {
    let v = json(&meixner(&["verify", "--family", "gram:1/3", "--maxdeg", "2", "--grid", "3"]));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["identity"] == "classical-reduction"));
}

#[test]
fn orthogonality_command() {
    let out = meixner(&["orthogonality", "--family", "triangular:1/3,1/4", "--beta", "2", "--maxdeg", "1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["total"], 6);
    let out = meixner(&["orthogonality", "--family", "gram:1/3", "--beta", "-1/2", "--maxdeg", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orthogonality_half_integer_beta() {
    let out = Command::new(env!("CARGO_BIN_EXE_meixner"))
        .args(["orthogonality", "--family", "gram:1/3", "--beta", "1/2", "--maxdeg", "2"])
        .env("MEIXNER_PRECISION_DIGITS", "60")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn spec_file_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&meixner(&["construct", "--family", "triangular:1/3,1/4"]));
    let mut spec = v["point"].clone();
    spec["beta"] = Value::String("2".into());
    let spec_path = dir.path().join("spec.json");
    std::fs::write(&spec_path, spec.to_string()).unwrap();
    let out_path = dir.path().join("ops.json");
    let out = meixner(&[
        "dump-operators",
        "--spec",
        spec_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let ops: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(ops["variable"].as_array().unwrap().len(), 2);
    assert_eq!(ops["degree"][0]["terms"].as_array().unwrap().len(), 6);
}

#[test]
fn both_sources_rejected() {
    let out = meixner(&["construct", "--family", "gram:1/3", "--spec", "{}"]);
    assert!(!out.status.success());
}
