//! End-to-end tests of the `slitprop` binary: file outputs, exit codes,
//! determinism and the diagnostics sidecar.

use std::path::Path;
use std::process::{Command, Output};

fn slitprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slitprop"))
        .args(args)
        .output()
        .expect("failed to spawn slitprop")
}

fn run_ok(args: &[&str]) -> Output {
    let out = slitprop(args);
    assert!(
        out.status.success(),
        "slitprop {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn presets_list_contains_all_names() {
    let out = run_ok(&["presets", "--list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "fig2-left-dirichlet",
        "fig2-left-neumann",
        "fig2-right-dirichlet",
        "fig3-left-free",
        "fig3-middle-free",
        "fig3-right-free",
        "fig4-double-free",
        "fig4-double-literal",
        "gravity-neon",
    ] {
        assert!(text.contains(name), "missing preset {name} in:\n{text}");
    }
}

#[test]
fn every_preset_runs_and_writes_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let list = run_ok(&["presets", "--list"]);
    let names: Vec<String> = String::from_utf8(list.stdout)
        .unwrap()
        .lines()
        .filter_map(|l| l.split_whitespace().next().map(str::to_string))
        .collect();
    assert!(names.len() >= 9);
    for name in &names {
        let dir = tmp.path().join(name);
        run_ok(&["run", "--preset", name, "--out", dir.to_str().unwrap()]);
        let csv = std::fs::read_to_string(dir.join("pattern.csv")).unwrap();
        assert!(csv.starts_with("y,z,re_amplitude,im_amplitude,intensity,probability_density\n"));
        let diag = read_json(&dir.join("diagnostics.json"));
        assert_eq!(diag["schema_version"], 1);
        assert_eq!(diag["status"], "ok", "preset {name}");
        assert!(diag["omega"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn csv_is_deterministic_across_runs_and_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let (d1, d2) = (tmp.path().join("a"), tmp.path().join("b"));
    run_ok(&[
        "run", "--preset", "fig3-middle-free", "--out", d1.to_str().unwrap(), "--threads", "1",
    ]);
    run_ok(&[
        "run", "--preset", "fig3-middle-free", "--out", d2.to_str().unwrap(), "--threads", "3",
    ]);
    let a = std::fs::read(d1.join("pattern.csv")).unwrap();
    let b = std::fs::read(d2.join("pattern.csv")).unwrap();
    assert_eq!(a, b, "pattern.csv differs between runs");
}

#[test]
fn fig2_right_dirichlet_diagnostics() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    run_ok(&["run", "--preset", "fig2-right-dirichlet", "--out", dir.to_str().unwrap()]);
    let diag = read_json(&dir.join("diagnostics.json"));
    let mu = diag["mu_path"].as_f64().unwrap();
    assert!((400.0..1600.0).contains(&mu), "mu_path = {mu}");
    assert_eq!(diag["regime"]["class"], "fraunhofer");
    assert_eq!(diag["method"], "exact");
    assert_eq!(diag["boundary_condition"], "dirichlet");
    assert!((diag["t_c"].as_f64().unwrap() - 0.0025).abs() < 1e-15);
    let cf = diag["captured_fraction"].as_f64().unwrap();
    assert!(cf > 0.0 && cf <= 1.0);
    // 97 grid points + header.
    let csv = std::fs::read_to_string(dir.join("pattern.csv")).unwrap();
    assert_eq!(csv.lines().count(), 98);
}

#[test]
fn fig3_middle_free_regime_numbers() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    run_ok(&["run", "--preset", "fig3-middle-free", "--out", dir.to_str().unwrap()]);
    let diag = read_json(&dir.join("diagnostics.json"));
    let q = diag["regime"]["q"].as_f64().unwrap();
    assert!((0.03..0.12).contains(&q), "q = {q}");
    let mu = diag["mu_window"].as_f64().unwrap();
    assert!((2e4..2e5).contains(&mu), "mu_window = {mu}");
}

#[test]
fn overlapping_double_slit_is_flagged() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    run_ok(&["run", "--preset", "fig4-double-literal", "--out", dir.to_str().unwrap()]);
    let diag = read_json(&dir.join("diagnostics.json"));
    assert_eq!(diag["overlap_warning"], true);
    let dir2 = tmp.path().join("out2");
    run_ok(&["run", "--preset", "fig4-double-free", "--out", dir2.to_str().unwrap()]);
    assert_eq!(read_json(&dir2.join("diagnostics.json"))["overlap_warning"], false);
}

#[test]
fn method_flag_overrides_config_default() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    run_ok(&[
        "run", "--preset", "fig3-right-free", "--out", dir.to_str().unwrap(), "--method",
        "fourth_order",
    ]);
    assert_eq!(read_json(&dir.join("diagnostics.json"))["method"], "fourth_order");
}

#[test]
fn compare_reports_position_shifts() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("out");
    run_ok(&[
        "compare", "--preset", "fig3-right-free", "--methods", "truncation,fourth_order",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(dir.join("pattern-truncation.csv").exists());
    assert!(dir.join("pattern-fourth_order.csv").exists());
    let rep = read_json(&dir.join("compare.json"));
    assert_eq!(rep["reference_method"], "fourth_order");
    let shifts = rep["methods"][0]["fringes"]["position_shifts"].as_array().unwrap();
    assert!(shifts.len() >= 4, "expected several fringes, got {shifts:?}");
    for s in shifts {
        assert!(s.as_f64().unwrap().abs() < 0.01, "large shift: {s}");
    }
    let gap = rep["methods"][0]["max_relative_amplitude_gap"].as_f64().unwrap();
    assert!(gap < 0.01, "gap = {gap}");
}

#[test]
fn empty_grid_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.toml");
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("presets/fig2-right-dirichlet.toml"),
    )
    .unwrap()
    .replace("n_z = 97", "n_z = 0");
    std::fs::write(&cfg, text).unwrap();
    let out = slitprop(&[
        "run", "--config", cfg.to_str().unwrap(), "--out",
        tmp.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn single_method_compare_is_a_validation_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = slitprop(&[
        "compare", "--preset", "fig3-right-free", "--methods", "truncation", "--out",
        tmp.path().join("out").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn gravity_method_without_gravity_table_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let out = slitprop(&[
        "run", "--preset", "fig3-right-free", "--out",
        tmp.path().join("out").to_str().unwrap(), "--method", "gravity",
    ]);
    assert_eq!(exit_code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unwritable_output_path_is_an_io_error() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("plain-file");
    std::fs::write(&file, "not a directory").unwrap();
    let out = slitprop(&[
        "run", "--preset", "fig3-right-free", "--out",
        file.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn preset_show_prints_toml() {
    let out = run_ok(&["presets", "--show", "gravity-neon"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("schema_version = 1"));
    assert!(text.contains("g = 9.81"));
}
