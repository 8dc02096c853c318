use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn qcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn axioms_on_builtins() {
    for b in ["fhilb:4", "rect:z2", "hadamard:2", "group:z2xz2", "rect:z3"] {
        let o = qcat(&["axioms", "--builtin", b]);
        assert_eq!(code(&o), 0, "{b}");
        assert_eq!(json(&o)["all_hold"], true);
        assert_eq!(json(&o)["laws"].as_array().unwrap().len(), 7);
    }
}

#[test]
fn axioms_reports_broken_counit() {
    let o = qcat(&["axioms", &fixture("broken_counit.json")]);
    assert_eq!(code(&o), 1);
    let failures = json(&o)["failures"].clone();
    assert!(
        failures.as_array().unwrap().contains(&Value::from("counit")),
        "{failures}"
    );
    let text = qcat(&["axioms", &fixture("broken_counit.json"), "--format", "text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("counit           false"));
}

#[test]
fn axioms_reads_complex_files() {
    let o = qcat(&["axioms", &fixture("copy2.json")]);
    assert_eq!(code(&o), 0);
}

#[test]
fn malformed_input_exits_2_naming_the_field() {
    let o = qcat(&["axioms", &fixture("short_delta.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`delta`"));
    let o = qcat(&["axioms", &fixture("truncated.json")]);
    assert_eq!(code(&o), 2);
    let o = qcat(&["axioms", &fixture("does_not_exist.json")]);
    assert_eq!(code(&o), 2);
    let o = qcat(&["axioms"]);
    assert_eq!(code(&o), 2);
    let o = qcat(&["simon", "--f", &fixture("broken_counit.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("`m`"));
    let o = qcat(&["frobnicate"]);
    assert_eq!(code(&o), 2);
    let o = qcat(&["basis", "--builtin", "fhilb:-3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn simon_exact_recovers_period() {
    let o = qcat(&[
        "simon",
        "--model",
        "fhilb",
        "--f",
        &fixture("period_f.json"),
        "--mode",
        "exact",
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["period"], 2);
    assert_eq!(r["diagnosis"], "unique");
    assert_eq!(r["model"], "fhilb");
    assert_eq!(r["samples_used"], 0);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 6);
}

#[test]
fn simon_rel_agrees_with_fhilb() {
    let a = json(&qcat(&["simon", "--model", "fhilb", "--f", &fixture("period_f.json")]));
    let o = qcat(&["simon", "--model", "rel", "--f", &fixture("period_f.json")]);
    assert_eq!(code(&o), 0);
    let b = json(&o);
    assert_eq!(a["period"], b["period"]);
    assert_eq!(a["support"], b["support"]);
    assert_eq!(b["model"], "rel");
}

#[test]
fn simon_negative_diagnoses_exit_1() {
    let o = qcat(&["simon", "--model", "fhilb", "--f", &fixture("injective.json")]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["diagnosis"], "trivial_only");
    assert_eq!(json(&o)["period"], Value::Null);
    let o = qcat(&["simon", "--f", &fixture("constant.json")]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["diagnosis"], "ambiguous");
}

#[test]
fn simon_size_caps_exit_2() {
    let o = qcat(&["simon", "--model", "rel", "--f", &fixture("period_m3.json")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn sampled_output_is_byte_identical_per_seed() {
    let run = |seed: &str| {
        qcat(&[
            "simon",
            "--f",
            &fixture("period_m3.json"),
            "--mode",
            "sampled",
            "--seed",
            seed,
        ])
    };
    let a = run("7");
    let b = run("7");
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["period"], 5);
    let default = qcat(&["simon", "--f", &fixture("period_m3.json"), "--mode", "sampled"]);
    assert_eq!(default.stdout, run("0").stdout);
}

#[test]
fn classify_size_2() {
    let o = qcat(&["classify", "--size", "2"]);
    assert_eq!(code(&o), 0);
    let classes = json(&o);
    let classes = classes.as_array().unwrap();
    assert_eq!(classes.len(), 2);
    for c in classes {
        assert!(!c["blocks"].as_array().unwrap().is_empty());
    }
    assert_eq!(code(&qcat(&["classify", "--size", "50"])), 2);
}

#[test]
fn basis_of_rect_z2() {
    let o = qcat(&["basis", "--builtin", "rect:z2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o), serde_json::json!(["{00,01}", "{10,11}"]));
}

#[test]
fn complementarity() {
    let o = qcat(&["complementary", "--builtin", "fhilb:2", "--builtin", "hadamard:2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o), Value::Bool(true));
    let o = qcat(&["complementary", "--builtin", "fhilb:2", "--builtin", "fhilb:2"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o), Value::Bool(false));
    let o = qcat(&["complementary", "--builtin", "fhilb:2", "--builtin", "rect:z2"]);
    assert_eq!(code(&o), 2);
}
