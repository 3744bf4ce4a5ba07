use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhermite")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct TempJson(PathBuf);

impl TempJson {
    fn as_str(&self) -> &str {
        self.0.to_str().unwrap()
    }
}

impl Drop for TempJson {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn cartan_file(contents: &str) -> TempJson {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let n = NEXT.fetch_add(1, Ordering::SeqCst);
    let p = std::env::temp_dir().join(format!("qhermite-cli-{}-{n}.json", std::process::id()));
    std::fs::File::create(&p).unwrap().write_all(contents.as_bytes()).unwrap();
    TempJson(p)
}

const B2: &str = r#"{"I":["1","2"],"a":[[2,-2],[-1,2]],"d":[1,2],"tau":{"1":"1","2":"2"}}"#;

#[test]
fn poly_hermite() {
    let o = run(&["poly", "hermite", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4*x^2 + v^2 - 1");
    assert_eq!(stdout(&run(&["poly", "hermite", "0"])).trim(), "1");
}

#[test]
fn poly_hermite_json() {
    let o = run(&["poly", "hermite", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["var"], "x");
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn poly_w_needs_datum() {
    let o = run(&["poly", "w", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let f = cartan_file(B2);
    let o = run(&["poly", "w", "2", "--cartan", f.as_str(), "--pair", "1", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x^2 - c");
}

#[test]
fn invalid_cartan_is_usage_error() {
    let f = cartan_file(r#"{"I":["1","2"],"a":[[2,-1],[-2,3]],"d":[1,1]}"#);
    let o = run(&["relation", "--cartan", f.as_str(), "--pair", "1", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("a_22"), "{err}");
}

#[test]
fn unknown_flag_and_suite_rejected() {
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "hermite", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "serre-tauii", "--a", "1"]).status.code(), Some(2));
}

#[test]
fn bipoly_first_cell() {
    assert_eq!(stdout(&run(&["bipoly", "1", "1"])).trim(), "4*x*y + (v^2 - 1)*r");
}

#[test]
fn relation_matches_closed_form() {
    for a in ["0", "-1", "-2", "-3"] {
        let o = run(&["relation", "--a", a, "--format", "json"]);
        assert!(o.status.success(), "a = {a}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["matches_closed_form"], true);
    }
    let o = run(&["relation", "--a", "0"]);
    assert!(stdout(&o).starts_with("0\n"));
}

#[test]
fn relation_from_config_file() {
    let f = cartan_file(B2);
    let o = run(&["relation", "--cartan", f.as_str(), "--pair", "2", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(matches)"));
}

#[test]
fn verify_sums() {
    let o = run(&["verify", "sums"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sums: 31 cases, 0 failures"));
}

#[test]
fn verify_serre_tauii_json() {
    let o = run(&["verify", "serre-tauii", "--a", "-3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["reports"][0]["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_all_max_6() {
    let o = run(&["verify", "all", "--max", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for s in ["univariate", "bivariate", "starproduct", "serre-tauii", "serre-tauij", "sums"] {
        assert!(out.contains(&format!("{s}: ")), "{s} missing");
    }
}

#[test]
fn gram_report() {
    let o = run(&["gram", "--q", "0.5", "--r", "2", "--maxdeg", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c00 = v["predicted"][0].as_f64().unwrap();
    assert!((c00 - 68.3519).abs() < 1e-3, "{c00}");
    assert_eq!(v["diag"].as_array().unwrap().len(), 9);

    let coarse = run(&["gram", "--q", "0.5", "--r", "2", "--maxdeg", "2", "--grid", "128"]);
    let w: serde_json::Value = serde_json::from_str(&stdout(&coarse)).unwrap();
    for (a, b) in v["diag"].as_array().unwrap().iter().zip(w["diag"].as_array().unwrap()) {
        assert!((a.as_f64().unwrap() - b.as_f64().unwrap()).abs() < 1e-8);
    }
}

#[test]
fn gram_rejects_bad_q() {
    assert_eq!(run(&["gram", "--q", "1.5", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["relation", "--a", "-2", "--format", "json"][..], &["verify", "bivariate", "--max", "4", "--json"]] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
