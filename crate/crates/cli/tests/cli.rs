use std::path::Path;
use std::process::{Command, Output};

fn garch_boot(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garch-boot")).args(args).arg("--out").arg(dir).output().expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn simulate_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = garch_boot(dir.path(), &["simulate", "--set", "n=5", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "simulate.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,x,h");
    assert_eq!(lines.len(), 6);
    assert!(dir.path().join("simulate_meta.txt").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = a.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\nn = 200\nR = 4\nsizes = 150\nmethods = qmle\nstarts = 2\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    for dir in [a.path(), b.path()] {
        assert!(garch_boot(dir, &["simulate", "--config", cfg, "--seed", "3"]).status.success());
        assert!(garch_boot(dir, &["sae", "--config", cfg, "--seed", "3", "--set", "dists=gaussian"]).status.success());
    }
    for name in ["simulate.csv", "sae.csv", "sae_accounting.csv"] {
        assert_eq!(read(a.path(), name), read(b.path(), name), "{name}");
    }
    let c = tempfile::tempdir().unwrap();
    garch_boot(c.path(), &["simulate", "--config", cfg, "--seed", "4"]);
    assert_ne!(read(a.path(), "simulate.csv"), read(c.path(), "simulate.csv"));
}

#[test]
fn short_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("x.txt");
    let body: String = (1..=10).map(|i| format!("{}\n", (i as f64 * 0.7).sin())).collect();
    std::fs::write(&input, body).unwrap();
    let out = garch_boot(dir.path(), &["fit", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sample too short"));
}

#[test]
fn malformed_input_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("x.txt");
    std::fs::write(&input, "# returns\n0.1\n-0.3\nabc\n").unwrap();
    let out = garch_boot(dir.path(), &["fit", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.path().join("missing.txt");
    let out = garch_boot(dir.path(), &["fit", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_settings_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(garch_boot(dir.path(), &["simulate", "--set", "bogus=1"]).status.code(), Some(2));
    assert_eq!(garch_boot(dir.path(), &["simulate", "--set", "n=x"]).status.code(), Some(2));
    assert_eq!(garch_boot(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn fit_from_file_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let sim = garch_boot(dir.path(), &["simulate", "--set", "n=1500", "--set", "alpha=0.4"]);
    assert!(sim.status.success());
    let xs: String = read(dir.path(), "simulate.csv")
        .lines()
        .skip(1)
        .map(|l| format!("{}\n", l.split(',').nth(1).unwrap()))
        .collect();
    let input = dir.path().join("x.txt");
    std::fs::write(&input, xs).unwrap();
    let out = garch_boot(dir.path(), &["fit", "--input", input.to_str().unwrap(), "--set", "N=200000"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("observations: 1500") && stdout.contains("kappa_hat"));
    assert!(read(dir.path(), "fit.csv").starts_with("param,estimate,std_error\nomega,"));
}

#[test]
fn contour_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = garch_boot(
        dir.path(),
        &["contour", "--set", "omega_grid=1,2", "--set", "alpha_grid=0.3,0.5", "--set", "N=100000"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(dir.path(), "contour.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "omega0,alpha0,var_omega,cov,var_alpha");
    assert_eq!(lines.len(), 5);
}
