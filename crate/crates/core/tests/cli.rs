//! End-to-end runs of the `ostrovsky` binary.

use std::path::Path;
use std::process::{Command, Output};

use ostrovsky::io::load_profile;

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ostrovsky"))
        .args(args)
        .current_dir(dir)
        .env_remove("OSTROVSKY_JOBS")
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn solve_writes_a_readable_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "solve",
            "--eq",
            "ro",
            "--a",
            "-0.3",
            "--modes",
            "128",
            "--out",
            "w.profile",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", text(&out.stderr));
    let line = text(&out.stdout);
    assert!(line.contains("gamma=") && line.contains("iterations="), "{line}");
    let p = load_profile(&dir.path().join("w.profile")).unwrap();
    assert_eq!(p.modes(), 128);
    assert!((p.amplitude + 0.3).abs() < 1e-15);
}

#[test]
fn solve_beyond_terminal_amplitude_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["solve", "--eq", "ro", "--a", "-0.7", "--modes", "256"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).starts_with("RangeViolation"), "{}", text(&out.stderr));
}

#[test]
fn zero_amplitude_profile_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["solve", "--eq", "ro", "--a", "0", "--modes", "64", "--out", "z.profile"],
        dir.path(),
    );
    assert!(out.status.success());
    let p = load_profile(&dir.path().join("z.profile")).unwrap();
    assert!(p.coeffs.iter().all(|&a| a == 0.0));
    assert_eq!(p.gamma, 1.0);
}

#[test]
fn bands_csv_layout_and_sign() {
    let dir = tempfile::tempdir().unwrap();
    let solve = run(
        &["solve", "--eq", "ro", "--a", "-0.1", "--modes", "64", "--out", "p"],
        dir.path(),
    );
    assert!(solve.status.success());
    let args = [
        "bands",
        "--profile",
        "p",
        "--c",
        "0.7",
        "--nbands",
        "3",
        "--kgrid",
        "21",
        "--asymptotic",
    ];
    let out = run(&args, dir.path());
    assert!(out.status.success(), "{}", text(&out.stderr));
    let csv = text(&out.stdout);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("kappa,band_1,band_2,band_3,lambda_gr_asym,lambda_ex_asym")
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 21);
    // the ground band dips below zero near kappa = 0 for c above the region
    let centre = &rows[10];
    assert_eq!(centre[0], 0.0);
    let near = rows
        .iter()
        .filter(|r| r[0].abs() < 0.15)
        .map(|r| r[1])
        .fold(f64::INFINITY, f64::min);
    assert!(near < 0.0);

    // identical flags give identical bytes
    let again = run(&args, dir.path());
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn region_csv_and_plot_script() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "region",
        "--eq",
        "ro",
        "--amax",
        "0.1",
        "--na",
        "2",
        "--modes",
        "32",
        "--out",
        "r.csv",
        "--plot-script",
        "r.gp",
    ];
    let out = run(&args, dir.path());
    assert!(out.status.success(), "{}", text(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "a,c_minus,c_plus,verified");
    assert_eq!(lines.len(), 3);
    for l in &lines[1..] {
        let f: Vec<&str> = l.split(',').collect();
        let (lo, hi): (f64, f64) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        assert!(lo < 0.5 && 0.5 < hi);
        assert_eq!(f[3], "true");
    }
    let script = std::fs::read_to_string(dir.path().join("r.gp")).unwrap();
    assert!(script.contains("r.csv"));

    // worker count does not change the output
    let single = run(
        &[
            "--jobs", "1", "region", "--eq", "ro", "--amax", "0.1", "--na", "2", "--modes", "32",
        ],
        dir.path(),
    );
    assert_eq!(text(&single.stdout), csv);
}

#[test]
fn invalid_flags_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&["solve", "--eq", "kdv", "--a", "0.1"], dir.path()).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["bands", "--profile", "missing", "--c", "1"], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn fast_validation_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["validate", "--eq", "mro", "--fast"], dir.path());
    let report = text(&out.stdout);
    for id in [4, 5, 6, 7, 9] {
        let tag = format!(" {id:>2} ");
        assert!(
            report
                .lines()
                .any(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]"))
                && report.contains(&tag),
            "{report}"
        );
    }
    // the delta_kappa part of criterion 9 does not hold, so the run fails
    assert!(report.contains("[FAIL]  9"));
    assert_eq!(out.status.code(), Some(1));
}
