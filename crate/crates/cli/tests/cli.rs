use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use g2forms::exterior::{canonical_split_g2, KForm};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2forms")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn form_file(dir: &TempDir, name: &str, form: &KForm) -> PathBuf {
    write(dir, name, &form.to_json())
}

#[test]
fn classify_canonical_and_degenerate() {
    let dir = TempDir::new().unwrap();
    let split = form_file(&dir, "split.json", &canonical_split_g2());
    let out = run(&["classify", s(&split)]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["verdict"], "SplitStable");
    assert_eq!(r["signature"], serde_json::json!([3, 4]));
    assert_eq!(r["stabilizer_dim"], 14);

    let e123 = form_file(&dir, "e123.json", &KForm::monomial(7, &[1, 2, 3]).unwrap());
    let out = run(&["classify", s(&e123)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "NotStable");
}

#[test]
fn classify_writes_output_file() {
    let dir = TempDir::new().unwrap();
    let split = form_file(&dir, "split.json", &canonical_split_g2());
    let dest = dir.path().join("report.json");
    let out = run(&["classify", s(&split), "-o", s(&dest)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(dest).unwrap()).unwrap();
    assert_eq!(r["verdict"], "SplitStable");
}

#[test]
fn malformed_input_exits_2_naming_the_term() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim":7,"degree":3,"terms":[{"indices":[1,2,3],"coeff":"1"},{"indices":[4,5,6],"coeff":"x/2"}]}"#,
    );
    let out = run(&["classify", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("term 1"), "{err}");
    assert!(err.contains("[4, 5, 6]"), "{err}");

    let broken = write(&dir, "broken.json", "{\"dim\": 7,");
    assert_eq!(run(&["classify", s(&broken)]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent/form.json"]).status.code(), Some(2));
}

#[test]
fn wrong_shape_is_a_distinct_error() {
    let dir = TempDir::new().unwrap();
    let two_form = form_file(&dir, "w.json", &KForm::monomial(7, &[1, 2]).unwrap());
    let out = run(&["classify", s(&two_form)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("shape error"));
    let six = form_file(&dir, "six.json", &KForm::monomial(6, &[1, 2, 3]).unwrap());
    let out = run(&["stabilizer", s(&six)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("shape error"));
}

#[test]
fn stabilizer_dimensions() {
    let dir = TempDir::new().unwrap();
    let cases = [(canonical_split_g2(), 14), (KForm::zero(7, 3).unwrap(), 49)];
    for (i, (form, dim)) in cases.iter().enumerate() {
        let f = form_file(&dir, &format!("f{i}.json"), form);
        let out = run(&["stabilizer", s(&f)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout_json(&out)["stabilizer_dim"], *dim);
    }
    let e123 = form_file(&dir, "e123.json", &KForm::monomial(7, &[1, 2, 3]).unwrap());
    let d = stdout_json(&run(&["stabilizer", s(&e123)]))["stabilizer_dim"].as_u64().unwrap();
    assert!(d > 14);

    let split = form_file(&dir, "split.json", &canonical_split_g2());
    let r = stdout_json(&run(&["stabilizer", s(&split), "--basis"]));
    let basis = r["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 14);
    assert!(basis.iter().all(|m| m.as_array().unwrap().len() == 7));
}

#[test]
fn cartan_named_algebras() {
    let out = run(&["cartan", "--algebra", "su3", "--check-closed", "--check-multisymplectic"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["checks"]["closed"], "pass");
    assert_eq!(r["checks"]["multisymplectic"], "pass");
    assert_eq!(r["form"]["dim"], 8);

    let out = run(&["cartan", "--algebra", "su2", "--check-closed", "--check-multisymplectic"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["checks"]["multisymplectic"], "pass");
    assert_eq!(stdout_json(&out)["checks"]["closed"], "pass");
}

#[test]
fn cartan_output_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let dest = dir.path().join("su2.json");
    let out = run(&["cartan", "--algebra", "su2", "-o", s(&dest)]);
    assert_eq!(out.status.code(), Some(0));
    let form = KForm::from_json(&fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!((form.dim(), form.degree(), form.len()), (3, 3, 1));
}

#[test]
fn cartan_from_files() {
    let dir = TempDir::new().unwrap();
    let abelian = write(&dir, "abelian.json", r#"{"dim": 3, "brackets": []}"#);
    let out = run(&["cartan", "--algebra", s(&abelian), "--check-multisymplectic"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["checks"]["multisymplectic"], "fail");

    let not_lie = write(
        &dir,
        "bad.json",
        r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 2, "coeffs": ["1/1", "0/1", "1/1"]},
            {"i": 2, "j": 3, "coeffs": ["1/1", "0/1", "0/1"]},
            {"i": 1, "j": 3, "coeffs": ["0/1", "-1/1", "0/1"]}]}"#,
    );
    let out = run(&["cartan", "--algebra", s(&not_lie)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).to_lowercase().contains("jacobi"), "{}", stderr(&out));
}

#[test]
fn verify_single_identity_sample() {
    let out = run(&["verify-x7", "--samples", "1", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = stdout_json(&out);
    assert_eq!(r["records"][0]["report"]["verdict"], "SplitStable");
    assert_eq!(r["records"][0]["params"]["p"], serde_json::json!(["1/1", "0/1"]));
    assert_eq!(r["summary"]["identity_golden_match"], true);
    assert_eq!(r["summary"]["samples"], 1);
}

#[test]
fn verify_text_format() {
    let out = run(&["verify-x7", "--samples", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("sample    0  p=(1/1, 0/1)"));
    assert!(text.contains("identity golden match: true"));
}

#[test]
fn verify_rejects_bad_arguments() {
    assert_eq!(run(&["verify-x7", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify-x7", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(run(&["verify-x7", "-o", "/nonexistent/dir/report.json"]).status.code(), Some(2));
}

// x₁₁ = cos α at every sample, and the restricted form degenerates exactly where it vanishes.
#[test]
fn verify_seed_7_split_stable_off_vanishing_g11() {
    let out = run(&["verify-x7", "--samples", "100", "--seed", "7"]);
    let r = stdout_json(&out);
    let records = r["records"].as_array().unwrap();
    assert_eq!(records.len(), 100);
    for rec in records {
        assert_eq!(rec["in_x7"], true);
        assert_eq!(rec["tangent_rank"], 7);
        let on_degenerate_locus = rec["params"]["p"][0] == "0/1";
        let expected = if on_degenerate_locus { "NotStable" } else { "SplitStable" };
        assert_eq!(rec["report"]["verdict"], expected, "sample {}", rec["index"]);
    }
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    run(&["verify-x7", "--samples", "100", "--seed", "7", "-o", s(&a)]);
    run(&["verify-x7", "--samples", "100", "--seed", "7", "-o", s(&b)]);
    let (a, b) = (fs::read(a).unwrap(), fs::read(b).unwrap());
    assert!(!a.is_empty());
    assert_eq!(a, b);
}
