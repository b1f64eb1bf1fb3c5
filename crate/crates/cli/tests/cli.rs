//! End-to-end tests of the `soliton-forge` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soliton-forge")).args(args).output().expect("binary runs")
}

fn forge_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soliton-forge"))
        .env("SOLITON_FORGE_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn rows(path: &Path) -> Vec<[f64; 3]> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,re,im"));
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|t| t.parse().unwrap()).collect();
            [v[0], v[1], v[2]]
        })
        .collect()
}

fn make_q0(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("q0.csv");
    let out = forge(&["make-soliton", "--z", "i", "--kappa", "0", "--grid", "512,40", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn make_soliton_writes_the_sech_profile() {
    let dir = tempfile::tempdir().unwrap();
    let path = make_q0(dir.path());
    let rows = rows(&path);
    assert_eq!(rows.len(), 512);
    for [x, re, im] in rows {
        assert!((re - 2.0 / (2.0 * x).cosh()).abs() < 1e-10);
        assert!(im.abs() < 1e-10);
    }
    // Every number carries 17 significant digits.
    let text = std::fs::read_to_string(&path).unwrap();
    let first = text.lines().nth(1).unwrap().split(',').next().unwrap();
    let mantissa = first.trim_start_matches('-').split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
}

#[test]
fn spectrum_finds_the_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    let q0 = make_q0(dir.path());
    let out = forge(&["spectrum", "--in", q0.to_str().unwrap(), "--region=-1,1,0.2,2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["count"], 1);
    let root = &v["roots"][0];
    assert!(root[0].as_f64().unwrap().abs() < 1e-8);
    assert!((root[1].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn energies_of_the_basic_soliton() {
    let dir = tempfile::tempdir().unwrap();
    let q0 = make_q0(dir.path());
    let out = forge(&["energies", "--in", q0.to_str().unwrap()]);
    assert!(out.status.success());
    let h = &json(&out)["H"];
    assert!((h[0].as_f64().unwrap() - 4.0).abs() < 1e-8);
    assert!((h[2].as_f64().unwrap() + 16.0 / 3.0).abs() < 1e-8);
}

#[test]
fn remove_then_add_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let q0 = make_q0(dir.path());
    let rest = dir.path().join("rest.csv");
    let point = dir.path().join("point.json");
    let back = dir.path().join("back.csv");
    let out = forge(&[
        "remove", "--in", q0.to_str().unwrap(), "--region=-1,1,0.2,2",
        "--out", rest.to_str().unwrap(), "--json-out", point.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(rows(&rest).iter().all(|r| r[1].hypot(r[2]) < 1e-6));
    let out = forge(&[
        "add", "--in", rest.to_str().unwrap(), "--point", point.to_str().unwrap(), "--out", back.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    for (a, b) in rows(&q0).iter().zip(rows(&back)) {
        assert!((a[1] - b[1]).hypot(a[2] - b[2]) < 1e-6);
    }
}

#[test]
fn schema_errors_exit_with_two() {
    let out = forge(&["make-soliton", "--grid", "64,10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = forge(&["make-soliton", "--z", "i", "--param", "bogus=1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = forge(&["evolve", "--flow", "kdv", "--param", "t=1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numeric_errors_exit_with_three_and_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let q0 = make_q0(dir.path());
    // The single soliton at i sits on the integration ray of E_s.
    let out = forge(&["energies", "--in", q0.to_str().unwrap(), "--param", "s=0.5"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["error"], "pole_on_ray");
    assert!(v["message"].is_string());
}

#[test]
fn outputs_are_deterministic_across_thread_counts() {
    let args = [
        "stability", "--z", "i", "--param", "eps=1e-3", "--param", "shape=band-limited-noise",
        "--param", "t=0.1", "--param", "records=1", "--seed", "11", "--grid", "256,32",
    ];
    let one = forge_threads("1", &args);
    let four = forge_threads("4", &args);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, forge_threads("1", &args).stdout);

    let args = ["two-soliton", "--param", "z1=0.2+0.8i", "--param", "z2=-0.3+1.1i", "--grid", "256,30"];
    assert_eq!(forge_threads("1", &args).stdout, forge_threads("3", &args).stdout);
}

#[test]
fn trajectory_reports_a_regime() {
    let out = forge(&[
        "trajectory", "--param", "z1=0.2+0.8i", "--param", "z2=-0.3+1.1i", "--param", "beta=0,0,3,0",
        "--param", "steps=2", "--grid", "512,40",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,x_plus,x_minus,amp_plus,amp_minus,regime");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with("split-velocity-nonresonant"));
}

#[test]
fn config_file_with_param_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"z1": "0.5i", "z2": "0.5i", "beta": [0, 1, 0, 1]}"#).unwrap();
    let a = forge(&["two-soliton", "--config", cfg.to_str().unwrap(), "--grid", "128,30"]);
    let b = forge(&["two-soliton", "--config", cfg.to_str().unwrap(), "--param", "z2=0.7i", "--grid", "128,30"]);
    assert!(a.status.success() && b.status.success());
    assert_ne!(a.stdout, b.stdout);
}
