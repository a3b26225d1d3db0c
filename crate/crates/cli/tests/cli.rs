use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqdensity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn factor_13_over_3() {
    let v = json(&["factor", "--m", "13", "--r", "3"]);
    let coeffs: Vec<Vec<u64>> = v["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| serde_json::from_value(f["coefficients"].clone()).unwrap())
        .collect();
    assert_eq!(
        coeffs,
        vec![vec![2, 0, 1, 1], vec![2, 1, 1, 1], vec![2, 2, 0, 1], vec![2, 2, 2, 1]]
    );
}

#[test]
fn factor_small_and_invalid() {
    let v = json(&["factor", "--m", "2", "--r", "3"]);
    assert_eq!(v["factors"][0]["coefficients"], serde_json::json!([1, 1]));
    assert_eq!(v["count"], 1);
    assert_eq!(exit_code(&["factor", "--m", "6", "--r", "3"]), 2);
    assert_eq!(exit_code(&["factor", "--m", "5", "--r", "4"]), 2);
    assert_eq!(exit_code(&["factor", "--m", "0", "--r", "3"]), 2);
}

#[test]
fn factor_output_is_reproducible() {
    let a = run(&["factor", "--m", "757", "--r", "3", "--seed", "7"]);
    let b = run(&["factor", "--m", "757", "--r", "3", "--seed", "7"]);
    let c = run(&["factor", "--m", "757", "--r", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("seed");
        v
    };
    assert_eq!(strip(&a), strip(&c));
}

#[test]
fn code_reports() {
    let v = json(&["code", "--m", "31", "--r", "2", "--factor", "0"]);
    assert_eq!(v["report"]["equidistant"], true);
    assert_eq!(v["report"]["min_zero_count"], 15);
    assert_eq!(v["report"]["max_zero_count"], 15);

    let v = json(&["code", "--m", "13", "--r", "3", "--factor", "0"]);
    assert_eq!(v["report"]["equidistant"], true);
    assert_eq!(v["report"]["min_zero_count"], 4);

    let v = json(&["code", "--m", "757", "--r", "3", "--factor", "0"]);
    assert_eq!(v["report"]["equidistant"], false);
    assert!(v["report"]["min_zero_count"].as_u64().unwrap() > 0);
    assert_eq!(v["report"]["all_within_interval"], true);
    assert_eq!(v["consistent"], true);
}

#[test]
fn code_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let f = json(&["factor", "--m", "31", "--r", "5"]);
    let h = f["factors"][0]["coefficients"].clone();
    fs::write(&path, serde_json::json!({"m": 31, "r": 5, "h": h}).to_string()).unwrap();
    let v = json(&["code", "--spec", path.to_str().unwrap()]);
    assert_eq!(v["report"]["nonzero_codewords"], 124);
    assert_eq!(v["report"]["min_zero_count"], 6);
    assert_eq!(v["report"]["max_zero_count"], 6);

    fs::write(&path, r#"{"m": 13, "r": 3, "h": [1, 1]}"#).unwrap();
    assert_eq!(exit_code(&["code", "--spec", path.to_str().unwrap()]), 2);
    fs::write(&path, "not json").unwrap();
    assert_eq!(exit_code(&["code", "--spec", path.to_str().unwrap()]), 2);
}

#[test]
fn code_over_budget() {
    assert_eq!(exit_code(&["--budget", "10", "code", "--m", "13", "--r", "3"]), 2);
}

#[test]
fn certify_cases() {
    for args in [
        &["certify", "--q", "3", "--k", "3"][..],
        &["certify", "--example33"][..],
        &["certify", "--q", "3", "--k", "5", "--p", "11"][..],
    ] {
        let v = json(args);
        let cert = &v["certificate"];
        assert_eq!(cert["rho_numerator"], 3, "{args:?}");
        assert_eq!(cert["rho_denominator"], 1, "{args:?}");
        assert!(cert["obligations"].as_array().unwrap().iter().all(|o| o["holds"] == true));
    }
    let v = json(&["certify", "--example33"]);
    assert_eq!(v["certificate"]["order"], 2673);
    assert_eq!(v["kernel_order"], 243);
}

#[test]
fn certify_757() {
    let v = json(&["certify", "--q", "3", "--k", "9", "--p", "757"]);
    assert_eq!(v["certificate"]["rho_numerator"], 3);
    assert_eq!(v["certificate"]["witness_size"], 19683);
}

#[test]
fn certify_invalid_parameters() {
    // (3^5 - 1)/2 = 121 is not prime
    assert_eq!(exit_code(&["certify", "--q", "3", "--k", "5"]), 2);
    // the order of 3 mod 13 is 3
    assert_eq!(exit_code(&["certify", "--q", "3", "--k", "4", "--p", "13"]), 2);
    assert_eq!(exit_code(&["certify", "--q", "4", "--k", "3"]), 2);
    assert_eq!(exit_code(&["certify"]), 2);
}

#[test]
fn certify_failure_exits_one() {
    // the full space: K contains words of full weight
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full.json");
    // h = x^5 - 1 gives the whole space F_2^5
    fs::write(&path, r#"{"m": 5, "r": 2, "h": [1, 0, 0, 0, 0, 1]}"#).unwrap();
    let out = run(&["certify", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("witness_intersecting"));
}

#[test]
fn search_cases() {
    let pairs = |q: &str, kmax: &str| -> Vec<(u64, u64)> {
        json(&["search", "--q", q, "--kmax", kmax])["pairs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p["k"].as_u64().unwrap(), p["p"].as_u64().unwrap()))
            .collect()
    };
    assert_eq!(pairs("3", "7"), vec![(3, 13), (7, 1093)]);
    assert_eq!(pairs("5", "3"), vec![(3, 31)]);
    assert_eq!(pairs("3", "2"), vec![]);
    assert_eq!(exit_code(&["search", "--q", "6", "--kmax", "3"]), 2);
}

#[test]
fn density_files() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = dir.path().join("c6.json");
    fs::write(&c6, r#"{"degree": 6, "generators": [[1, 2, 3, 4, 5, 0]]}"#).unwrap();
    let s3 = dir.path().join("s3.json");
    fs::write(&s3, r#"{"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "order": 6}"#).unwrap();

    for path in [&c6, &s3] {
        let v = json(&["density", "--group", path.to_str().unwrap()]);
        assert_eq!(v["rho_numerator"], 1);
        assert_eq!(v["rho_denominator"], 1);
    }
    assert_eq!(
        exit_code(&["--budget", "3", "density", "--group", c6.to_str().unwrap()]),
        2
    );

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"degree": 3, "generators": [[0, 0, 1]]}"#).unwrap();
    assert_eq!(exit_code(&["density", "--group", bad.to_str().unwrap()]), 2);
    assert_eq!(exit_code(&["density", "--group", "/nonexistent/file.json"]), 2);
}

#[test]
fn text_format_mirrors_json() {
    let out = run(&["--format", "text", "search", "--q", "3", "--kmax", "7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1093"));
    assert!(text.lines().any(|l| l.starts_with("q ") && l.ends_with(" 3")));
}
