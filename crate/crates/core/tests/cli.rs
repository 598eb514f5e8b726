use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use singular_periodic::cli::{parse_config, read_profile};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn singper(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singper"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn singper")
}

fn run(args: &[&str]) -> (i32, tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = singper(args, dir.path());
    let text = format!(
        "{}{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (out.status.code().unwrap(), dir, text)
}

fn cfg(name: &str) -> String {
    config(name).display().to_string()
}

#[test]
fn constants_prints_closed_forms() {
    let (code, _dir, text) = run(&["constants", "--config", &cfg("inverse.toml")]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("sigma = 0.3678794412"), "{text}");
    assert!(text.contains("Gamma = 0.2140972657"), "{text}");
    assert!(text.contains("chi = 1.5819767069"), "{text}");
}

#[test]
fn verify_writes_a_passing_certificate() {
    let (code, dir, text) = run(&["verify", "--config", &cfg("inverse.toml"), "--lambda", "1"]);
    assert_eq!(code, 0, "{text}");
    let cert = std::fs::read_to_string(dir.path().join("certificate.toml")).unwrap();
    let table: toml::Table = toml::from_str(&cert).unwrap();
    assert_eq!(table["label"].as_str(), Some("numerical certificate"));
    assert_eq!(table["case"].as_str(), Some("a"));
    assert_eq!(table["overall"].as_bool(), Some(true));
    assert!((table["r2"].as_float().unwrap() - std::f64::consts::E).abs() < 1e-8);
}

#[test]
fn failed_certificate_exits_one() {
    let (code, dir, text) = run(&["verify", "--config", &cfg("multiplicity.toml"), "--lambda", "1"]);
    assert_eq!(code, 1, "{text}");
    let cert = std::fs::read_to_string(dir.path().join("certificate.toml")).unwrap();
    assert!(cert.contains("overall = false"));
    assert!(cert.contains("lambda*chi*M(r1) < r1"));
}

#[test]
fn solve_writes_solutions_and_profiles() {
    let (code, dir, text) = run(&["solve", "--config", &cfg("multiplicity.toml")]);
    assert_eq!(code, 0, "{text}");
    let mut reader = csv::Reader::from_path(dir.path().join("solutions.csv")).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["lambda", "solution_id", "norm", "fp_residual", "ode_residual", "poincare_mismatch", "iterations"]
    );
    let norms: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[2].parse().unwrap())
        .collect();
    assert_eq!(norms.len(), 2);
    assert!((norms[0] - 0.321_436_016_476_113_3).abs() < 1e-6);
    assert!((norms[1] - 9.989_979_929_698_562).abs() < 1e-6);
    for (id, norm) in norms.iter().enumerate() {
        let u = read_profile(&dir.path().join(format!("profile_{}.csv", id + 1)), 1.0).unwrap();
        assert_eq!(u.m(), 128);
        // the CSV carries 17 significant digits, so the norm is reproduced exactly
        assert_eq!(u.norm(), *norm);
    }
}

#[test]
fn solve_is_deterministic() {
    let args = ["solve", "--config", &cfg("variable.toml"), "--seed", "5"];
    let (c1, d1, _) = run(&args);
    let (c2, d2, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    for file in ["solutions.csv", "profile_1.csv"] {
        let a = std::fs::read(d1.path().join(file)).unwrap();
        let b = std::fs::read(d2.path().join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between runs");
    }
}

#[test]
fn forcing_flag_changes_the_problem() {
    let (code, dir, text) = run(&["solve", "--config", &cfg("forcing.toml"), "--forcing"]);
    assert_eq!(code, 0, "{text}");
    let u = read_profile(&dir.path().join("profile_1.csv"), 1.0).unwrap();
    let spread = u.component(0).iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - u.component(0).iter().copied().fold(f64::INFINITY, f64::min);
    assert!(spread > 0.1, "forced solution should oscillate, spread {spread}");
    let (_, dir, _) = run(&["solve", "--config", &cfg("forcing.toml")]);
    let plain = read_profile(&dir.path().join("profile_1.csv"), 1.0).unwrap();
    assert!((plain.norm() - 1.0).abs() < 1e-9);
}

#[test]
fn sweep_writes_rows_in_order() {
    let (code, dir, text) = run(&[
        "sweep",
        "--config",
        &cfg("multiplicity.toml"),
        "--lambda-range",
        "0.05:0.2:4:log",
    ]);
    assert_eq!(code, 0, "{text}");
    let mut reader = csv::Reader::from_path(dir.path().join("sweep.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0].parse::<f64>().unwrap(), 0.05);
    assert_eq!(rows[3][0].parse::<f64>().unwrap(), 0.2);
    for row in &rows {
        assert_eq!(&row[1], "2");
        assert_eq!(row[2].split(';').count(), 2);
    }
}

#[test]
fn exit_codes() {
    let zero = cfg("zero_decay.toml");
    assert_eq!(run(&["verify", "--config", &zero]).0, 2);
    assert_eq!(run(&["solve", "--config", &zero]).0, 2);
    // the large solution of 1/x + x^2 disappears past the fold at 2^(2/3)/3
    assert_eq!(run(&["solve", "--config", &cfg("multiplicity.toml"), "--lambda", "1"]).0, 3);
    let inv = cfg("inverse.toml");
    assert_eq!(run(&["solve", "--config", &inv, "--grid", "100"]).0, 4);
    assert_eq!(run(&["solve", "--config", &inv, "--tol", "0.1"]).0, 4);
    assert_eq!(run(&["sweep", "--config", &inv]).0, 4);
    assert_eq!(run(&["sweep", "--config", &inv, "--lambda-range", "1:0.5:3"]).0, 4);
    assert_eq!(run(&["verify", "--config", &inv, "--case", "b"]).0, 4);
    assert_eq!(run(&["solve", "--config", "does/not/exist.toml"]).0, 4);
    assert_eq!(run(&["bogus", "--config", &inv]).0, 4);
}

#[test]
fn config_errors_name_the_key() {
    let text = std::fs::read_to_string(config("inverse.toml")).unwrap();
    let broken = text.replace("p_1 = 1.0", "p_1 = -1.0");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.toml");
    std::fs::write(&path, &broken).unwrap();
    assert!(parse_config(&broken).is_err());
    let (code, _d, out) = run(&["solve", "--config", &path.display().to_string()]);
    assert_eq!(code, 4);
    assert!(out.contains("[f]"), "{out}");
}
