use std::process::Command;

use pwqh::cli::dispatch;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(args.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|e| panic!("not JSON ({e}): {s}"))
}

#[test]
fn xi_max_prints_compact_json() {
    let (code, out, _) = run(&["xi-max", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"n":3,"xi_max":4}"#);
}

#[test]
fn missing_input_is_an_io_error() {
    let (code, out, err) = run(&["analyze", "missing.json"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert_eq!(json(&err)["error"], "Io");
}

#[test]
fn usage_errors() {
    for args in [&["bogus"][..], &["xi-max"], &["center", "--params", "1,x,1"], &["xi-max", "--n", "3", "--bad"]] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(json(&err)["exit_code"], 2);
    }
    // wrong parameter count is a usage problem too
    let (code, _, _) = run(&["portrait", "--form", "II", "--params", "1,2,3"]);
    assert_eq!(code, 2);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("xi-max") && out.contains("portrait"));
}

#[test]
fn center_report() {
    let (code, out, _) = run(&["center", "--params", "-1,1,1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["is_center"], true);
    let table = v["table"].as_array().unwrap();
    assert_eq!(table.len(), 5);
    for row in table {
        assert!(row["rel_err"].as_f64().unwrap() < 1e-8);
    }
    let (code, out, _) = run(&["center", "--params", "1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["is_center"], false);
}

#[test]
fn domain_errors_exit_one() {
    let (code, _, err) = run(&["realize", "--n", "2", "--roots", "1,2", "--params", "1,1,1"]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "NotACenter");
    let (code, _, err) = run(&["realize", "--n", "1", "--roots", "1,2,3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "TooManyRoots");
    let (code, _, err) = run(&["simulate", "--params", "-1,-1,1", "--x0", "1,0"]);
    assert_eq!(code, 1);
    assert_eq!(json(&err)["error"], "StartOnSliding");
}

#[test]
fn realize_then_melnikov_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let spec = spec.to_str().unwrap();
    let targets = [0.5, 3.0, 7.0, 20.0];
    let (code, _, err) = run(&["realize", "--n", "3", "--roots", "0.5,3,7,20", "--out", spec]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["melnikov", "--spec", spec]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["xi_max"], 4);
    assert_eq!(v["variations"], 4);
    let roots: Vec<f64> = v["roots"].as_array().unwrap().iter().map(|r| r.as_f64().unwrap()).collect();
    assert_eq!(roots.len(), targets.len());
    for (r, t) in roots.iter().zip(targets) {
        assert!((r - t).abs() < 1e-9 * t, "{r} vs {t}");
    }
}

#[test]
fn cycles_near_melnikov_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let spec = spec.to_str().unwrap();
    run(&["realize", "--n", "2", "--roots", "1,8,27", "--out", spec]);
    let (code, out, _) = run(&["cycles", "--spec", spec, "--eps", "1e-3", "--h-range", "0.3,40", "--grid", "60"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let zeros: Vec<f64> = v["zeros"].as_array().unwrap().iter().map(|r| r.as_f64().unwrap()).collect();
    assert_eq!(zeros.len(), 3);
    for (z, t) in zeros.iter().zip([1.0, 8.0, 27.0]) {
        assert!((z - t).abs() < 0.01 * t);
    }
}

#[test]
fn analyze_system_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("system.json");
    std::fs::write(&path, r#"{"upper":{"P":[[1,1,2.0]],"Q":[[1,0,-1.0],[0,2,4.0]]},"lower":{"P":[[1,1,6.0]],"Q":[[1,0,2.0],[0,2,2.0]]}}"#)
        .unwrap();
    let (code, out, err) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v = json(&out);
    assert_eq!(v["canonical"]["variant"], "II");
    assert_eq!(v["center"]["is_center"], false);
    assert_eq!(v["switching"]["crossing"]["pieces"].as_array().unwrap().len(), 0);

    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(run(&["analyze", path.to_str().unwrap()]).0, 2);
    std::fs::write(&path, r#"{"upper":{"P":[[2,0,1.0]],"Q":[[0,2,1.0]]},"lower":{"P":[[2,0,1.0]],"Q":[[0,2,1.0]]}}"#)
        .unwrap();
    let (code, _, err) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn portrait_svg_and_metadata() {
    let (code, out, _) = run(&["portrait", "--form", "I", "--params", "-1,1,1", "--grid", "6"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml") && out.trim_end().ends_with("</svg>"));
    let desc = out.split("<desc>").nth(1).unwrap().split("</desc>").next().unwrap();
    let meta = json(desc);
    assert_eq!(meta["case_id"], 4);
    assert_eq!(meta["has_center"], true);
    assert!(out.matches(r#"class="closed""#).count() >= 5);
}

#[test]
fn simulate_csv() {
    let (code, out, _) =
        run(&["simulate", "--params", "-1,1,1", "--x0", "1,0", "--zone", "upper", "--max-crossings", "2", "--tmax", "10"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("t,x,y,event"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 4 && r[..3].iter().all(|v| v.parse::<f64>().is_ok())));
    let events: Vec<&str> = rows.iter().map(|r| r[3]).filter(|e| !e.is_empty()).collect();
    assert_eq!(events, ["crossing", "crossing"]);
    let last: f64 = rows.last().unwrap()[1].parse().unwrap();
    assert!((last - 1.0).abs() < 1e-8);
}

#[test]
fn thread_cap_does_not_change_output() {
    let bin = env!("CARGO_BIN_EXE_pwqh");
    let args = ["portrait", "--form", "III", "--params", "1,-1,-1,3", "--grid", "6"];
    let one = Command::new(bin).args(args).env("PWQH_THREADS", "1").output().unwrap();
    let many = Command::new(bin).args(args).env("PWQH_THREADS", "4").output().unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}
