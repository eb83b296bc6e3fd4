use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn arithstat(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arithstat")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_constant_spec() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.json");
    fs::write(&input, r#"{"kind": "constant", "value": 2.5}"#).unwrap();
    let out = dir.path().join("out");
    let (code, err) = arithstat(&[
        "analyze", "--input", input.to_str().unwrap(), "--length", "4000", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let report = read_json(&out.join("report.json"));
    assert_eq!(report["schema"], 1);
    assert_eq!(report["asc"]["outcome"], "ConvergentAtScale");
    assert_eq!(report["asc"]["witness"], 1);
    assert_eq!(report["config"]["length"], 4000);
    let csv = fs::read_to_string(out.join("asc_curve.csv")).unwrap();
    assert!(csv.starts_with("axis,index,epsilon,witness_n,density\n"));
}

#[test]
fn analyze_spikes_on_dyadic_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.json");
    fs::write(&input, r#"{"kind": "sparse_spike", "support": {"rule": "powers", "base": 2, "min_index": 2}, "values": [1.0]}"#)
        .unwrap();
    let out = dir.path().join("out");
    let (code, err) = arithstat(&[
        "analyze", "--input", input.to_str().unwrap(), "--length", "65536",
        "--scheme", r#"{"geometric": {"ratio": 2.0, "count": 17}}"#, "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let mut reader = csv::Reader::from_path(out.join("asc_theta_curve.csv")).unwrap();
    let rows: Vec<(u32, f64, f64)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[1].parse().unwrap(), r[2].parse().unwrap(), r[4].parse().unwrap())
        })
        .filter(|&(_, e, _)| e == 0.5)
        .collect();
    assert_eq!(rows.len(), 16);
    for (r, _, d) in rows {
        assert_eq!(d, 2f64.powi(1 - r as i32));
    }
    let report = read_json(&out.join("report.json"));
    assert!(report["ntheta_norm"].is_number());
    assert_eq!(report["ac_theta"]["block_means"].as_array().unwrap().len(), 16);
}

#[test]
fn input_and_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("e.csv");
    fs::write(&empty, "").unwrap();
    let out = dir.path().join("out");
    let o = out.to_str().unwrap();
    assert_eq!(arithstat(&["analyze", "--input", empty.to_str().unwrap(), "--out", o]).0, 2);

    let bad = dir.path().join("b.csv");
    fs::write(&bad, "1\nabc\n").unwrap();
    assert_eq!(arithstat(&["analyze", "--input", bad.to_str().unwrap(), "--out", o]).0, 2);

    let good = dir.path().join("g.csv");
    fs::write(&good, "1\n2\n3\n").unwrap();
    let g = good.to_str().unwrap();
    assert_eq!(arithstat(&["analyze", "--input", g, "--out", o, "--tol", "0.5", "--tol-hi", "0.1"]).0, 3);
    assert_eq!(arithstat(&["analyze", "--input", g, "--out", o, "--eps-grid", "0.1,0.5"]).0, 3);
    assert_eq!(arithstat(&["scheme", "--scheme", "4,2", "--out", o]).0, 2);
}

#[test]
fn scheme_relations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ref");
    let (code, err) = arithstat(&["scheme", "--scheme", "1,4,16", "--scheme", "1,2,4,8,16", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let r = read_json(&out.join("scheme.json"));
    assert_eq!(r["relation"]["relation"]["kind"], "refinement");
    assert_eq!(r["relation"]["relation"]["delta"]["part"], 1);
    assert_eq!(r["relation"]["relation"]["delta"]["whole"], 3);

    let out = dir.path().join("pair");
    arithstat(&["scheme", "--scheme", "1,3,7,20", "--scheme", "1,5,12,20", "--out", out.to_str().unwrap()]);
    let r = read_json(&out.join("scheme.json"));
    assert_eq!(r["relation"]["relation"]["kind"], "general_pair");

    let out = dir.path().join("geo");
    arithstat(&["scheme", "--scheme", r#"{"geometric": {"ratio": 2.0, "count": 9}}"#, "--out", out.to_str().unwrap()]);
    let table = fs::read_to_string(out.join("scheme.csv")).unwrap();
    let q: Vec<&str> = table.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(q, vec!["2.0"; 8]);
}

#[test]
fn verify_small_and_fault() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let (code, err) = arithstat(&["verify", "--instances", "60", "--seed", "4", "--out", a.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let r = read_json(&a.join("verify.json"));
    assert_eq!(r["report"]["passed"], true);
    assert_eq!(r["report"]["refusals"].as_array().unwrap().len(), 1);

    let b = dir.path().join("b");
    let (code, _) = arithstat(&[
        "verify", "--instances", "60", "--seed", "4", "--inject-fault", "scaling", "--out", b.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
}
