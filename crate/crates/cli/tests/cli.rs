use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }
}

fn chanmaj(args: &[&str]) -> Output {
    chanmaj_with_env(args, &[])
}

fn chanmaj_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_chanmaj"));
    cmd.args(args).env_remove("CHANMAJ_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

const NOISY: &str = r#"{"rows":3,"cols":2,"transition":[[0.7,0.2],[0.2,0.3],[0.1,0.5]]}"#;
const UNIFORM: &str = r#"{"rows":3,"cols":1,"transition":[[0.3333333333333333],[0.3333333333333333],[0.3333333333333334]]}"#;
const GAME: &str = r#"{"n":3,"l":2,"t":[[0.3,0.1],[0.1,0.2],[0.2,0.1]]}"#;

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn every_channel_majorizes_the_uniform_channel() {
    let ws = Workspace::new();
    let n = ws.file("n.json", NOISY);
    let u = ws.file("u.json", UNIFORM);
    let v = json(&chanmaj(&[
        "majorize",
        "--n",
        path_str(&n),
        "--m",
        path_str(&u),
    ]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["certificate"]["relation"], "holds");

    let v = json(&chanmaj(&[
        "majorize",
        "--n",
        path_str(&u),
        "--m",
        path_str(&n),
        "--grid",
        "20",
    ]));
    assert_eq!(v["holds"], false);
    assert_eq!(v["grid_holds"], false);
    assert!(v["certificate"]["separating"].is_array());
}

#[test]
fn qubit_identity_has_min_entropy_minus_one() {
    let ws = Workspace::new();
    let id2 = ws.file(
        "id2.json",
        r#"{"in":2,"out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#,
    );
    let v = json(&chanmaj(&["qhmin", "--channel", path_str(&id2)]));
    assert_eq!(v["h_min"].as_f64(), Some(-1.0));
    let csv = chanmaj(&["qhmin", "--channel", path_str(&id2), "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "h_min\n-1.0\n");
}

#[test]
fn simulation_is_close_to_exact_and_reproducible() {
    let ws = Workspace::new();
    let n = ws.file("n.json", NOISY);
    let g = ws.file("g.json", GAME);
    let args = [
        "simulate",
        "--channel",
        path_str(&n),
        "--game",
        path_str(&g),
        "--rounds",
        "1000000",
        "--seed",
        "7",
        "--workers",
        "4",
    ];
    let first = chanmaj(&args);
    let v = json(&first);
    let (est, exact) = (
        v["estimate"].as_f64().unwrap(),
        v["exact"].as_f64().unwrap(),
    );
    let sigma = (exact * (1.0 - exact) / 1e6).sqrt();
    assert!((est - exact).abs() < 4.0 * sigma, "{est} vs {exact}");
    assert_eq!(v["rounds"], 1_000_000);
    assert_eq!(v["seed"], 7);
    assert_eq!(chanmaj(&args).stdout, first.stdout);
}

#[test]
fn entropy_reports_bounds_and_sequence() {
    let ws = Workspace::new();
    let n = ws.file("n.json", NOISY);
    let v = json(&chanmaj(&[
        "entropy",
        "--channel",
        path_str(&n),
        "--kmax",
        "2",
    ]));
    let lower = v["lower"].as_f64().unwrap();
    let upper = v["upper"].as_f64().unwrap();
    assert!(0.0 <= lower && lower <= upper);
    assert_eq!(v["regularized"].as_array().unwrap().len(), 2);

    let csv = chanmaj(&[
        "entropy",
        "--channel",
        path_str(&n),
        "--kmax",
        "3",
        "--entropy",
        "min",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,lower,upper,regularized");
    assert_eq!(lines.len(), 4);
}

#[test]
fn standard_form_and_upper_bound() {
    let ws = Workspace::new();
    let n = ws.file("n.json", NOISY);
    let v = json(&chanmaj(&["standard-form", "--channel", path_str(&n)]));
    assert_eq!(v["cols"], 1);
    let v = json(&chanmaj(&["upper-bound", "--channel", path_str(&n)]));
    assert_eq!(v["upper_bound"], serde_json::json!([0.7, 0.2, 0.1]));
}

#[test]
fn superchannel_classification() {
    let ws = Workspace::new();
    let theta = ws.file(
        "theta.json",
        r#"{"pre":[[0.5],[0.5]],"post":[[[[1,1],[0,0]]],[[[0,0],[1,1]]]]}"#,
    );
    let n = ws.file(
        "n.json",
        r#"{"rows":2,"cols":2,"transition":[[0.9,0.4],[0.1,0.6]]}"#,
    );
    let v = json(&chanmaj(&[
        "verify-superchannel",
        "--superchannel",
        path_str(&theta),
        "--n",
        path_str(&n),
    ]));
    assert_eq!(v["mixing"], false);
    assert_eq!(v["uniformity_preserving"], true);
    assert_eq!(v["completely_uniformity_preserving"], false);
    assert_eq!(v["image"]["cols"], 1);
}

#[test]
fn input_problems_exit_with_two() {
    let ws = Workspace::new();
    let bad = ws.file("bad.json", "{not json");
    let n = ws.file("n.json", NOISY);
    let unnormalized = ws.file(
        "unnormalized.json",
        r#"{"rows":2,"cols":1,"transition":[[0.9],[0.2]]}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["qhmin", "--channel", path_str(&bad)],
        vec!["standard-form", "--channel", "/nonexistent/channel.json"],
        vec!["standard-form", "--channel", path_str(&unnormalized)],
        vec!["entropy", "--channel", path_str(&n), "--entropy", "renyi:1"],
        vec!["entropy", "--channel", path_str(&n), "--kmax", "40"],
        vec![
            "standard-form",
            "--channel",
            path_str(&n),
            "--format",
            "csv",
        ],
        vec!["no-such-command"],
    ];
    for args in cases {
        let out = chanmaj(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = chanmaj(&["entropy", "--channel", path_str(&n), "--kmax", "40"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource"));
}

#[test]
fn tolerance_can_be_overridden() {
    let ws = Workspace::new();
    let n = ws.file(
        "n.json",
        r#"{"rows":2,"cols":1,"transition":[[0.5],[0.5]]}"#,
    );
    let m = ws.file(
        "m.json",
        r#"{"rows":2,"cols":1,"transition":[[0.5000001],[0.4999999]]}"#,
    );
    let args = ["majorize", "--n", path_str(&n), "--m", path_str(&m)];
    assert_eq!(json(&chanmaj(&args))["holds"], false);
    assert_eq!(
        json(&chanmaj_with_env(&args, &[("CHANMAJ_TOL", "1e-6")]))["holds"],
        true
    );
    let out = chanmaj_with_env(&args, &[("CHANMAJ_TOL", "-1")]);
    assert_eq!(out.status.code(), Some(2));
}
