//! End-to-end runs of the `skewloop` binary.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewloop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Tantrix file of a circle at colatitude `theta` about +z.
fn circle_tantrix(file: &Path, theta: f64, count: usize) {
    let (st, ct) = theta.sin_cos();
    let params: Vec<f64> = (0..count).map(|i| i as f64 / count as f64).collect();
    let samples: Vec<[f64; 3]> = params
        .iter()
        .map(|t| [st * (TAU * t).cos(), st * (TAU * t).sin(), ct])
        .collect();
    let json = serde_json::json!({
        "dimension": 3,
        "closed": true,
        "params": params,
        "samples": samples,
    });
    fs::write(file, json.to_string()).unwrap();
}

fn integer_lattice(file: &Path) {
    fs::write(
        file,
        r#"{"dimension": 3, "generators": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    )
    .unwrap();
}

/// Re-derives the soundness inequalities from the printed certificate.
fn certificate_is_sound(cert: &Value, g: &[f64], dirs: &[[f64; 3]]) -> bool {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    match cert["verdict"].as_str().unwrap() {
        "Interior" => {
            let w: Vec<f64> = serde_json::from_value(cert["weights"].clone()).unwrap();
            let sum: Vec<f64> = (0..3)
                .map(|k| w.iter().zip(dirs).map(|(wi, d)| wi * d[k]).sum())
                .collect();
            w.iter().all(|&x| x > 0.0) && sum.iter().zip(g).all(|(a, b)| (a - b).abs() <= 1e-8)
        }
        _ => {
            let u: Vec<f64> = serde_json::from_value(cert["normal"].clone()).unwrap();
            dot(&u, g) <= 1e-8 && dirs.iter().all(|d| dot(&u, d) >= -1e-8)
        }
    }
}

#[test]
fn helix_round_trip_through_verify_and_tantrix() {
    let dir = TempDir::new().unwrap();
    let helix = path(&dir, "helix.json");
    let out = run(&[
        "gen-helix",
        "--g",
        "1,1,1",
        "--r",
        "0.5",
        "--samples",
        "256",
        "--out",
        s(&helix),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let verdict = run(&["verify-skew", "--curve", s(&helix)]);
    assert_eq!(code(&verdict), 0);
    assert_eq!(stdout_json(&verdict)["is_skew"], Value::Bool(true));

    let tx = path(&dir, "tx.json");
    assert_eq!(
        code(&run(&["tantrix", "--curve", s(&helix), "--out", s(&tx)])),
        0
    );
    let lattice = path(&dir, "z3.json");
    integer_lattice(&lattice);
    let classes = run(&[
        "find-class",
        "--tantrix",
        s(&tx),
        "--lattice",
        s(&lattice),
        "--radius",
        "1",
    ]);
    assert_eq!(code(&classes), 0);
    let text = String::from_utf8(classes.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim() == "1,1,1"), "{text}");
    assert!(!text.lines().any(|l| l.trim() == "-1,-1,-1"));

    let csv = path(&dir, "helix.csv");
    assert_eq!(
        code(&run(&["plot-data", "--curve", s(&helix), "--out", s(&csv)])),
        0
    );
    let rows = fs::read_to_string(&csv).unwrap();
    let mut lines = rows.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,x3"));
    assert_eq!(lines.count(), 256);
}

#[test]
fn raw_helix_closes_at_two_pi_g() {
    let dir = TempDir::new().unwrap();
    let helix = path(&dir, "raw.json");
    let out = run(&[
        "gen-helix",
        "--g",
        "0,0,1",
        "--r",
        "1",
        "--samples",
        "64",
        "--raw",
        "--out",
        s(&helix),
    ]);
    assert_eq!(code(&out), 0);
    let file: Value = serde_json::from_str(&fs::read_to_string(&helix).unwrap()).unwrap();
    let samples = file["samples"].as_array().unwrap();
    let first = samples.first().unwrap()[2].as_f64().unwrap();
    let last = samples.last().unwrap()[2].as_f64().unwrap();
    assert!((last - first - TAU).abs() < 1e-12);
}

#[test]
fn cone_test_verdicts_and_certificates() {
    let dir = TempDir::new().unwrap();
    let tx = path(&dir, "circle.json");
    circle_tantrix(&tx, 0.6, 64);
    let file: Value = serde_json::from_str(&fs::read_to_string(&tx).unwrap()).unwrap();
    let dirs: Vec<[f64; 3]> = serde_json::from_value(file["samples"].clone()).unwrap();

    for (g, want, verdict) in [
        ([0.0, 0.0, 1.0], 0, "Interior"),
        ([0.0, 0.0, -1.0], 1, "Outside"),
        ([1.0, 0.0, 0.0], 1, "Outside"),
    ] {
        let arg = format!("{},{},{}", g[0], g[1], g[2]);
        let out = run(&["cone-test", "--tantrix", s(&tx), "--g", &arg]);
        assert_eq!(code(&out), want, "g={arg}");
        let cert = stdout_json(&out);
        assert_eq!(cert["verdict"], verdict);
        assert!(certificate_is_sound(&cert, &g, &dirs), "g={arg}: {cert}");
    }
}

#[test]
fn realize_then_verify() {
    let dir = TempDir::new().unwrap();
    let tx = path(&dir, "circle.json");
    circle_tantrix(&tx, 0.8, 128);
    let lattice = path(&dir, "z3.json");
    integer_lattice(&lattice);
    let arc = path(&dir, "arc.json");
    let out = run(&[
        "realize",
        "--tantrix",
        s(&tx),
        "--g",
        "0,0,2",
        "--lattice",
        s(&lattice),
        "--out",
        s(&arc),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["class"], serde_json::json!([0, 0, 2]));
    assert_eq!(report["verdict"]["is_skew"], Value::Bool(true));
    assert_eq!(code(&run(&["verify-skew", "--curve", s(&arc)])), 0);

    // outside the cone: a reasoned refusal, exit 1, nothing written
    let refused = path(&dir, "refused.json");
    let out = run(&[
        "realize",
        "--tantrix",
        s(&tx),
        "--g",
        "0,0,-1",
        "--lattice",
        s(&lattice),
        "--out",
        s(&refused),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["condition"], "outside_cone");
    assert!(!refused.exists());
}

#[test]
fn curve_files_round_trip_bit_exactly() {
    let dir = TempDir::new().unwrap();
    let helix = path(&dir, "helix.json");
    assert_eq!(
        code(&run(&[
            "gen-helix",
            "--g",
            "0.3,-1.7,2.9",
            "--r",
            "0.123456789",
            "--samples",
            "50",
            "--out",
            s(&helix)
        ])),
        0
    );
    // the same curve file through `tantrix` twice: identical bytes
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    assert_eq!(
        code(&run(&["tantrix", "--curve", s(&helix), "--out", s(&a)])),
        0
    );
    assert_eq!(
        code(&run(&["tantrix", "--curve", s(&helix), "--out", s(&b)])),
        0
    );
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let first: Value = serde_json::from_str(&fs::read_to_string(&helix).unwrap()).unwrap();
    let csv = path(&dir, "helix.csv");
    assert_eq!(
        code(&run(&["plot-data", "--curve", s(&helix), "--out", s(&csv)])),
        0
    );
    let rows = fs::read_to_string(&csv).unwrap();
    for (line, sample) in rows
        .lines()
        .skip(1)
        .zip(first["samples"].as_array().unwrap())
    {
        let values: Vec<f64> = line
            .split(',')
            .skip(1)
            .map(|x| x.parse().unwrap())
            .collect();
        let want: Vec<f64> = serde_json::from_value(sample.clone()).unwrap();
        assert_eq!(values, want);
    }
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.json");
    let out = run(&["verify-skew", "--curve", s(&missing)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let junk = path(&dir, "junk.json");
    fs::write(
        &junk,
        r#"{"dimension": 3, "closed": true, "params": [0], "samples": [[1, 2]]}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["verify-skew", "--curve", s(&junk)])), 2);

    let tx = path(&dir, "circle.json");
    circle_tantrix(&tx, 0.6, 32);
    assert_eq!(
        code(&run(&["cone-test", "--tantrix", s(&tx), "--g", "1,x,0"])),
        2
    );
    assert_eq!(
        code(&run(&["cone-test", "--tantrix", s(&tx), "--g", "1,0"])),
        2
    );
    assert_eq!(code(&run(&["verify-skew"])), 2);
}

#[test]
fn planar_circle_is_not_skew() {
    let dir = TempDir::new().unwrap();
    let circle = path(&dir, "circle.json");
    let params: Vec<f64> = (0..64).map(|i| i as f64 / 64.0).collect();
    let samples: Vec<[f64; 3]> = params
        .iter()
        .map(|t| [(TAU * t).cos(), (TAU * t).sin(), 0.0])
        .collect();
    let json =
        serde_json::json!({"dimension": 3, "closed": true, "params": params, "samples": samples});
    fs::write(&circle, json.to_string()).unwrap();
    let out = run(&["verify-skew", "--curve", s(&circle)]);
    assert_eq!(code(&out), 1);
    let verdict = stdout_json(&out);
    assert_eq!(verdict["is_skew"], Value::Bool(false));
    assert_eq!(verdict["antipode_free"], Value::Bool(false));
}
