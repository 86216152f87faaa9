use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn orlicz(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_orlicz")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("invalid JSON ({e}): {text}"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const REFERENCE: &str = "N=3\np=1.9\nq=1.05\nr=3.5\ndims=9,9,9\nlengths=1,1,1\n";

#[test]
fn check_admissible_set() {
    let run = orlicz(&["check", "--N", "3", "--p", "1.9", "--q", "1.05", "--r", "3.5"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json(&run.stdout);
    assert_eq!(report["admissible"], true);
    assert_eq!(report["exponents"]["N"], 3);
}

#[test]
fn check_rejections() {
    let run = orlicz(&["check", "--N", "2", "--p", "1.5", "--q", "1.5", "--r", "3.5"]);
    assert_eq!(run.code, 1);
    let failed: Vec<String> = json(&run.stdout)["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert!(failed.contains(&"p+q<N".to_string()), "{failed:?}");

    let run = orlicz(&["check", "--N", "3", "--p", "3.5", "--q", "1.1", "--r", "5"]);
    assert_eq!(run.code, 1);
    let report = json(&run.stdout);
    assert!(report["criticalExponent"].is_null());
    let n_gt_p = report["conditions"].as_array().unwrap().iter().find(|c| c["name"] == "N>p").unwrap().clone();
    assert_eq!(n_gt_p["passed"], false);
}

#[test]
fn malformed_flags_are_input_errors() {
    assert_eq!(orlicz(&["check", "--N", "3", "--p", "x", "--q", "1.05", "--r", "3.5"]).code, 3);
    assert_eq!(orlicz(&["check", "--N", "3", "--p", "1.9"]).code, 3);
    assert_eq!(orlicz(&["frobnicate"]).code, 3);
    assert_eq!(orlicz(&["verify", "--suite", "everything"]).code, 3);
    assert_eq!(orlicz(&["--help"]).code, 0);
}

#[test]
fn tabulate_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.csv");
    let out = out.to_str().unwrap();
    let args =
        ["tabulate", "--p", "1.9", "--q", "1.05", "--t-min", "1e-4", "--t-max", "1e4", "--points", "41", "--out", out];
    let run = orlicz(&args);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let first = std::fs::read(out).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,phi,Phi,PhiConjAtPhi,ratio"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 41);
    assert_eq!(rows[0][0], 1e-4);
    assert_eq!(rows[40][0], 1e4);
    for row in &rows {
        assert!((1.9..=2.95).contains(&row[4]), "{row:?}");
        // Young equality Φ(t) + Φ̄(φ(t)) = tφ(t).
        assert!((row[2] + row[3] - row[0] * row[1]).abs() <= 1e-8 * (1.0 + row[0] * row[1]));
    }
    let t: f64 = rows[0][0];
    assert!((rows[0][2] / t.powf(2.95) * 2.95 - 1.0).abs() < 0.01);

    assert_eq!(orlicz(&args).code, 0);
    assert_eq!(std::fs::read(out).unwrap(), first);

    let bad = ["tabulate", "--p", "1.9", "--q", "1.05", "--t-min", "10", "--t-max", "1", "--points", "5", "--out", out];
    assert_eq!(orlicz(&bad).code, 3);
    let bad = ["tabulate", "--p", "1.9", "--q", "1.05", "--t-min", "1", "--t-max", "10", "--points", "1", "--out", out];
    assert_eq!(orlicz(&bad).code, 3);
}

#[test]
fn lambda_star_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.cfg", &format!("{REFERENCE}bump.t0=2\nbump.innerFraction=0.5\n"));
    let run = orlicz(&["lambda-star", "--config", &config]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let value = json(&run.stdout)["lambdaHat"].as_f64().unwrap();
    assert!((value - 58.027969026566519).abs() <= 1e-12 * value);
}

#[test]
fn solve_minimisation_above_lambda_hat() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "min.cfg", &format!("{REFERENCE}lambda=116.05593805313304\n"));
    let out = dir.path().join("min.json");
    let run = orlicz(&["solve", "--problem", "min", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let file = json(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(file["version"], 1);
    assert_eq!(file["problem"], "min");
    assert_eq!(file["values"].as_array().unwrap().len(), 729);
    assert!(file["diagnostics"]["energy"].as_f64().unwrap() < 0.0);
    assert!(file["diagnostics"]["residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(json(&run.stdout)["diagnostics"], file["diagnostics"]);
}

#[test]
fn solve_mountain_pass_seed_42() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "mp.cfg", &format!("{REFERENCE}lambda=1\nproblem=mp\nseed=42\n"));
    let out = dir.path().join("mp.json");
    let run = orlicz(&["solve", "--problem", "mp", "--config", &config, "--out", out.to_str().unwrap()]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let file = json(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(file["problem"], "mp");
    assert!(file["diagnostics"]["energy"].as_f64().unwrap() > 0.0);
    assert_eq!(file["diagnostics"]["converged"], true);
}

#[test]
fn solve_gates_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let small = "N=3\np=1.9\nq=1.05\ndims=5\nlengths=1\n";
    let supercritical = write_config(dir.path(), "crit.cfg", &format!("{small}r=4.5\n"));
    let out = dir.path().join("u.json");
    let out = out.to_str().unwrap();
    assert_eq!(orlicz(&["solve", "--problem", "min", "--config", &supercritical, "--out", out]).code, 1);
    assert!(!Path::new(out).exists());
    let forced = orlicz(&["solve", "--problem", "min", "--config", &supercritical, "--out", out, "--force"]);
    assert_eq!(forced.code, 0, "{}", forced.stderr);
    assert_eq!(json(&std::fs::read_to_string(out).unwrap())["diagnostics"]["forced"], true);
    assert!(forced.stderr.contains("r<critical"));

    let budget = write_config(dir.path(), "budget.cfg", &format!("{small}r=3.5\nlambda=200\nmaxIter=1\n"));
    let run = orlicz(&["solve", "--problem", "min", "--config", &budget, "--out", out]);
    assert_eq!(run.code, 2);
    assert_eq!(json(&std::fs::read_to_string(out).unwrap())["diagnostics"]["converged"], false);

    let flat = write_config(dir.path(), "flat.cfg", &format!("{small}r=1.5\nforce=true\n"));
    let run = orlicz(&["solve", "--problem", "mp", "--config", &flat, "--out", out]);
    assert_eq!(run.code, 2, "{}", run.stderr);

    let unknown = write_config(dir.path(), "bad.cfg", &format!("{small}r=3.5\ncolour=red\n"));
    assert_eq!(orlicz(&["solve", "--problem", "min", "--config", &unknown, "--out", out]).code, 3);
    let clash = write_config(dir.path(), "clash.cfg", &format!("{small}r=3.5\nproblem=mp\n"));
    assert_eq!(orlicz(&["solve", "--problem", "min", "--config", &clash, "--out", out]).code, 3);
    let missing = dir.path().join("missing.cfg");
    assert_eq!(orlicz(&["solve", "--problem", "min", "--config", missing.to_str().unwrap(), "--out", out]).code, 3);
}

#[test]
fn verify_nfunction_suite() {
    let run = orlicz(&["verify", "--suite", "nfunction", "--seed", "1"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let summary = json(&run.stdout);
    assert_eq!(summary["passed"], true);
    assert!(summary["invariants"].as_array().unwrap().iter().all(|i| i["passed"] == true && i["slack"].is_number()));
    assert_eq!(orlicz(&["verify", "--suite", "nfunction", "--seed", "1"]).stdout, run.stdout);
}

#[test]
fn verify_tamper_hook_fails_named_invariant() {
    let run = orlicz(&["verify", "--suite", "nfunction", "--seed", "1", "--tamper", "nfunction.young_inequality"]);
    assert_eq!(run.code, 1);
    let summary = json(&run.stdout);
    assert_eq!(summary["failed"], serde_json::json!(["nfunction.young_inequality"]));
    assert!(run.stderr.contains("nfunction.young_inequality"));
    assert_eq!(orlicz(&["verify", "--suite", "nfunction", "--tamper", "no.such"]).code, 3);
}
