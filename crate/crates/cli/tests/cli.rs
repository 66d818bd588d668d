use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use projquant::scalar::frac;
use projquant::serial::{symbol_to_json, to_canonical_string};
use projquant::symbol::monomial_basis;
use projquant::Symbol;
use serde_json::Value;

fn projquant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projquant")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn quantize_carries_the_correction() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", r#"{"n":2,"p":1,"terms":[{"coef":"1","wedge":[1],"x":[1,0],"xi":[1,0]}]}"#);
    let d = dir.path().join("d.json");
    let o = projquant(&["quantize", "--input", &s, "--output", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&d).unwrap()).unwrap();
    let order0 = v["terms"].as_array().unwrap().iter().find(|t| t["alpha"] == serde_json::json!([0, 0])).unwrap();
    assert_eq!(order0["wedge"], serde_json::json!([1]));
    assert_eq!(order0["coef"][0]["coef"], "2/5");
}

#[test]
fn symbol_inverts_quantize_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let mut inputs: Vec<Symbol> = Vec::new();
    for (p, k) in [(0, 2), (1, 1), (1, 2), (2, 3)] {
        let basis = monomial_basis(2, p, k, 2);
        let mut u = Symbol::zero(2, p);
        for (i, b) in basis.iter().enumerate().step_by(3) {
            u.add_scaled(b, &frac(i as i64 - 4, 1 + i as i64 % 5));
        }
        inputs.push(u);
    }
    for (i, u) in inputs.iter().enumerate() {
        let text = to_canonical_string(&symbol_to_json(u));
        let s = write(dir.path(), &format!("s{i}.json"), &text);
        let d = dir.path().join(format!("d{i}.json"));
        assert!(projquant(&["quantize", "--input", &s, "--output", d.to_str().unwrap()]).status.success());
        let back = projquant(&["symbol", "--input", d.to_str().unwrap()]);
        assert_eq!(back.status.code(), Some(0));
        assert_eq!(stdout(&back), text);
    }
}

#[test]
fn apply_prints_polynomial() {
    let dir = tempfile::tempdir().unwrap();
    // x¹∂₁ on the v₁ component, plus 2/5
    let op = write(
        dir.path(),
        "d.json",
        r#"{"n":2,"p":1,"terms":[
            {"alpha":[1,0],"wedge":[1],"coef":[{"exp":[1,0],"coef":"1"}]},
            {"alpha":[0,0],"wedge":[1],"coef":[{"exp":[0,0],"coef":"2/5"}]}]}"#,
    );
    let form = write(dir.path(), "w.json", r#"{"n":2,"p":1,"terms":[{"wedge":[1],"coef":[{"exp":[2,1],"coef":"3/2"}]}]}"#);
    let o = projquant(&["apply", "--op", &op, "--form", &form]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, serde_json::json!([{"coef": "18/5", "exp": [2, 1]}]));
}

#[test]
fn table_spectrum() {
    let o = projquant(&["table", "--what", "spectrum", "--dim", "2", "--max-k", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let a01 = rows.iter().find(|r| r["k"] == 0 && r["p"] == 1).unwrap();
    assert_eq!(a01["alpha"], "1/1");
    let text = stdout(&projquant(&["table", "--what", "qcoeff", "--dim", "2", "--max-k", "1"]));
    assert!(text.starts_with('k'));
    assert!(text.contains("1/5"));
}

#[test]
fn invariant_dim_reports_generators() {
    let o = projquant(&["invariant-dim", "--dim", "2", "--k", "1", "--p", "2", "--q", "1", "--vect"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 2);
    let o = projquant(&["invariant-dim", "--dim", "3", "--k", "2", "--p", "1", "--l", "3", "--q", "0"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["generators"][0]["name"], "δ*");
}

#[test]
fn verify_passes_and_prints_json() {
    let o = projquant(&["verify", "--suite", "koszul", "--dim", "2", "--max-order", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"]["δ² = 0"]["passed"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(projquant(&["verify", "--suite", "nope", "--dim", "2"]).status.code(), Some(2));
    assert_eq!(projquant(&["verify", "--suite", "koszul", "--dim", "7"]).status.code(), Some(2));
    assert_eq!(projquant(&["quantize"]).status.code(), Some(2));
    assert_eq!(projquant(&["invariant-dim", "--dim", "2", "--k", "1", "--p", "1", "--q", "1"]).status.code(), Some(2));

    let bad = write(dir.path(), "bad.json", r#"{"n":2,"#);
    assert_eq!(projquant(&["symbol", "--input", &bad]).status.code(), Some(2));
    let schema = write(dir.path(), "schema.json", r#"{"n":2,"p":1,"terms":[{"coef":"1","wedge":[5],"x":[0,0],"xi":[0,0]}]}"#);
    assert_eq!(projquant(&["quantize", "--input", &schema]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(projquant(&["symbol", "--input", missing.to_str().unwrap()]).status.code(), Some(2));

    let op = write(dir.path(), "d.json", r#"{"n":2,"p":0,"terms":[]}"#);
    let form3 = write(dir.path(), "w.json", r#"{"n":3,"p":0,"terms":[]}"#);
    assert_eq!(projquant(&["apply", "--op", &op, "--form", &form3]).status.code(), Some(1));
    let form1 = write(dir.path(), "w1.json", r#"{"n":2,"p":1,"terms":[]}"#);
    assert_eq!(projquant(&["apply", "--op", &op, "--form", &form1]).status.code(), Some(1));
}
