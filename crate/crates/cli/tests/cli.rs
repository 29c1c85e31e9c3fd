use std::path::Path;
use std::process::{Command, Output};

use photosub_cli::SweepResult;

const SMALL: &str = r#"
sweep.fig5 = { from = 0.4, to = 0.9, steps = 5 }
sweep.fig6 = { from = 0.01, to = 0.3, steps = 4 }
sweep.fig9 = { from = -3.0, to = 3.0, steps = 7 }
validate.draws = 10
"#;

fn photosub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photosub")).args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.toml");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn fig5_to_stdout_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = photosub(&["fig5", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let result = SweepResult::from_csv(&text).unwrap();
    assert_eq!(result.meta.command, "fig5");
    assert!(result.meta.config.contains("[sweep.fig5]") || result.meta.config.contains("fig5"));
    let rows = result.sweep_rows().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(result.to_csv(), text);
}

#[test]
fn both_formats_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out_dir = dir.path().join("out");
    for cmd in ["fig6", "fig9"] {
        let out = photosub(&[cmd, "--config", &cfg, "--out", out_dir.to_str().unwrap(), "--format", "both"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let csv = std::fs::read_to_string(out_dir.join(format!("{cmd}.csv"))).unwrap();
        assert!(SweepResult::from_csv(&csv).is_ok());
        let svg = std::fs::read_to_string(out_dir.join(format!("{cmd}.svg"))).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("<polyline"));
    }
}

#[test]
fn fit_empirical_reports_both_fits() {
    let out = photosub(&["fit-empirical"]);
    assert!(out.status.success());
    let result = SweepResult::from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(result.rows.len(), 2);
    assert_eq!(result.column("x").unwrap(), vec![0.0, 1.0]);
}

#[test]
fn show_config_round_trips() {
    let out = photosub(&["show-config"]);
    assert!(out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &String::from_utf8(out.stdout).unwrap());
    assert!(photosub(&["show-config", "--config", &cfg]).status.success());
}

#[test]
fn config_errors_exit_with_1() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["geometry.w = 3.0", "sweep.fig5 = { from = 0.9, to = 0.3, steps = 3 }", "losses.eta_hom = 0.0"] {
        let cfg = write_config(dir.path(), text);
        let out = photosub(&["fig5", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(1), "{text}");
    }
    assert_eq!(photosub(&["fig5", "--config", "/nonexistent/config.toml"]).status.code(), Some(1));
    assert_eq!(photosub(&["fig5", "--format", "svg"]).status.code(), Some(1));
    assert_eq!(photosub(&["fig5", "--format", "png"]).status.code(), Some(1));
}

#[test]
fn validate_passes_and_negative_control_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = photosub(&["validate", "--config", &cfg, "--seed", "11"]);
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{report}");
    assert!(!report.contains("FAIL"));

    let cfg = write_config(dir.path(), &format!("{SMALL}validate.perturb_symplectic = 1e-4\n"));
    let out = photosub(&["validate", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.lines().any(|l| l.starts_with("FAIL") && l.contains("symplectic")), "{report}");
}

#[test]
fn numeric_failure_exits_with_2() {
    // squeezing this strong is out of reach for qlE0 <= 2 with a narrow pump
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "geometry.wp_ratio = 0.05\nsweep.s = 0.01\n");
    assert_eq!(photosub(&["fig9", "--config", &cfg]).status.code(), Some(2));
}
