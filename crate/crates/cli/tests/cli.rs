//! End-to-end checks of the command-line interface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tropsurf"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generic_graph_has_expected_f_vector() {
    let input = fixture("generic_surface.json");
    let out = run(&[
        "generic",
        "--input",
        input.to_str().unwrap(),
        "--suppress-bivalent",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 8);
    assert_eq!(v["meta"]["pipeline"], "generic");
}

#[test]
fn check_rejects_special_coefficients_with_witness() {
    let input = fixture("special_surface.json");
    let out = run(&["check", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["accepted"], false);
    let violations = v["violations"].as_array().unwrap();
    assert!(violations
        .iter()
        .any(|w| w["kind"] == "triple-torus-point" && w["witness"].as_str().unwrap().contains("(1,2)")));
    // generic surface passes
    let input = fixture("generic_surface.json");
    let out = run(&["check", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn generic_on_special_input_exits_one() {
    let input = fixture("special_surface.json");
    let out = run(&["generic", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["accepted"], false);
}

#[test]
fn nongeneric_builds_the_resolved_graph() {
    let input = fixture("special_surface.json");
    let dir = std::env::temp_dir().join("tropsurf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let diagram = dir.join("diagram.json");
    let dot = dir.join("graph.dot");
    let out = run(&[
        "nongeneric",
        "--input",
        input.to_str().unwrap(),
        "--diagram",
        diagram.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let vertices = v["vertices"].as_array().unwrap();
    assert!(vertices.iter().any(|w| w["point"] == serde_json::json!([1, 1, 1])));
    assert_eq!(vertices.len(), 7);
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);
    let d: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&diagram).unwrap()).unwrap();
    assert_eq!(d["blowups"].as_array().unwrap().len(), 3);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("graph tropical"));
}

#[test]
fn complex_and_balance_round_trip() {
    let input = fixture("plane_complex.json");
    let dir = std::env::temp_dir().join("tropsurf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = run(&["complex", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let fan_path = dir.join("plane_fan.json");
    std::fs::write(&fan_path, &out.stdout).unwrap();
    let out = run(&["balance", "--fan", fan_path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["balanced"], true);
    // push forward along the identity: six cones again
    let out = run(&[
        "pushforward",
        "--fan",
        fan_path.to_str().unwrap(),
        "--matrix",
        fixture("identity3.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["cones"].as_array().unwrap().len(), 6);
}

#[test]
fn deterministic_output_for_fixed_seed() {
    let input = fixture("generic_surface.json");
    let args = [
        "generic",
        "--input",
        input.to_str().unwrap(),
        "--seed",
        "42",
        "--keep-zero-edges",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_inputs_are_rejected() {
    let dir = std::env::temp_dir().join("tropsurf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    // zero denominator
    let bad = dir.join("bad_rational.json");
    std::fs::write(
        &bad,
        r#"{"variables":["s","t"],"polynomials":[{"name":"f","terms":[{"coeff":"1/0","exp":[0,0]}]}]}"#,
    )
    .unwrap();
    let out = run(&["check", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("zero denominator"));
    // duplicate exponent
    let dup = dir.join("dup_exp.json");
    std::fs::write(
        &dup,
        r#"{"variables":["s","t"],"polynomials":[{"name":"f","terms":[{"coeff":"1","exp":[0,0]},{"coeff":"2","exp":[0,0]}]}]}"#,
    )
    .unwrap();
    let out = run(&["check", "--input", dup.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("duplicate exponent"));
    // unknown field
    let unk = dir.join("unknown.json");
    std::fs::write(
        &unk,
        r#"{"variables":["s","t"],"polynomials":[],"surprise":1}"#,
    )
    .unwrap();
    let out = run(&["check", "--input", unk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // usage error
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn laurent_coefficients_accepted() {
    let dir = std::env::temp_dir().join("tropsurf-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("laurent.json");
    std::fs::write(
        &p,
        r#"{"variables":["s","t"],"polynomials":[
            {"name":"f1","terms":[{"coeff":"1/3","exp":[-1,2]},{"coeff":"1","exp":[0,0]}]},
            {"name":"f2","terms":[{"coeff":"1","exp":[0,0]},{"coeff":"2","exp":[1,0]},{"coeff":"3","exp":[0,1]}]},
            {"name":"f3","terms":[{"coeff":"1","exp":[0,0]},{"coeff":"5","exp":[1,1]}]}
        ]}"#,
    )
    .unwrap();
    let out = run(&["check", "--input", p.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}
