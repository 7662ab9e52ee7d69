use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn catalog() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../nilrad/data/catalog.json").display().to_string()
}

fn nilrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilrad")).args(args).env_remove("NILRAD_TOL").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("nilrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.display().to_string()
}

#[test]
fn heisenberg_is_en() {
    let o = nilrad(&["check", &data("heisenberg.law")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("EN (route: nice_basis)"), "{out}");
    assert!(out.contains("x = (1/3)"));
}

#[test]
fn rank_zero_entry() {
    let o = nilrad(&["check", &data("0.1.law")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NOT_EN (route: rank_zero)"));
}

#[test]
fn no_positive_solution_entry() {
    let o = nilrad(&["check", &data("1.3_iv.law"), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NOT_EN");
    assert_eq!(v["certificates"][0]["kind"], "no_positive_solution");
}

#[test]
fn parse_error_names_token() {
    let o = nilrad(&["check", &data("bad.law")]);
    assert_eq!(o.status.code(), Some(64));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("near `<end>`"), "{err}");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(nilrad(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(nilrad(&["--tol", "abc", "check", "x"]).status.code(), Some(64));
    assert_eq!(nilrad(&["--help"]).status.code(), Some(0));
    assert_eq!(nilrad(&["catalog", "verify", &catalog(), "--only", "9.99"]).status.code(), Some(64));
}

#[test]
fn witness_entry_reports_c() {
    let o = nilrad(&["catalog", "verify", &catalog(), "--only", "1.11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("c = -25/31"), "{out}");
    assert!(out.contains("1/1 match"));
}

#[test]
fn corrupted_expectation_fails() {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(catalog()).unwrap()).unwrap();
    let entry = v["entries"].as_array_mut().unwrap().iter_mut().find(|e| e["id"] == "1.11").unwrap();
    entry["expected"]["dim_der"] = serde_json::json!(99);
    let path = scratch("corrupt.json", &v.to_string());
    let o = nilrad(&["catalog", "verify", &path, "--only", "1.11"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("MISMATCH (dim_der)"), "{out}");
}

#[test]
fn schema_error_exits_65() {
    let path = scratch("schema.json", r#"{"entries": [{"id": "x", "law": "dim 2"}]}"#);
    let o = nilrad(&["catalog", "verify", &path]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn degenerate_to_zero() {
    let o = nilrad(&["degenerate", &data("1.21.law"), "--X", "-4,23,-28,10,-1,-8,8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("X in g_phi: true"));
    assert!(out.contains("limit: zero"));
}

#[test]
fn zero_exponents_fix_the_law() {
    let o = nilrad(&["degenerate", &data("1.21.law"), "--X", "0,0,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("the law itself"));
}

#[test]
fn wrong_x_length_is_usage_error() {
    assert_eq!(nilrad(&["degenerate", &data("1.21.law"), "--X", "1,2"]).status.code(), Some(64));
}

#[test]
fn json_report_round_trips() {
    let o = nilrad(&["report", &data("heisenberg.law"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = nilrad::catalog::Report::from_json(&text).unwrap();
    assert_eq!(r.to_json().trim(), text.trim());
}

#[test]
fn catalog_json_is_deterministic() {
    let a = nilrad(&["catalog", "verify", &catalog(), "--json", "--parallel", "1"]);
    let b = nilrad(&["catalog", "verify", &catalog(), "--json", "--parallel", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_nilrad"))
        .args(["check", &data("heisenberg.law")])
        .env("NILRAD_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}
