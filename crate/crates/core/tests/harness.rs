//! Run configuration, output files and the command-line front end.

use std::fs;
use std::path::Path;
use std::process::Command;

use mppdg::harness::{run_convergence, run_single, RunConfig};
use mppdg::{get_problem, Params, Scheme1D, SchemeOptions};
use serde_json::Value;

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let schema: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Data rows of a solution.csv, skipping `#` lines and the header.
fn csv_rows(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next().unwrap();
    lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn zero_time_run_writes_the_projected_averages() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new("linear-1d", 2, 16);
    cfg.tfinal = Some(0.0);
    cfg.out = Some(dir.path().to_path_buf());
    let out = run_single(&cfg).unwrap();
    assert_eq!(out.report.steps, 0);
    let text = fs::read_to_string(dir.path().join("solution.csv")).unwrap();
    assert!(text.starts_with("# problem: linear-1d\n"));
    assert!(text.lines().any(|l| l == "x_center,u_bar"));
    let rows = csv_rows(&dir.path().join("solution.csv"));
    assert_eq!(rows.len(), 16);
    let p = get_problem("linear-1d", &Params::new()).unwrap().into_1d().unwrap();
    let projected = Scheme1D::new(p, 16, 2, SchemeOptions::new(2)).unwrap().project_initial().unwrap().averages();
    for (j, row) in rows.iter().enumerate() {
        assert_eq!(row[1], projected[j]);
        let (a, b) = (row[0] - std::f64::consts::PI / 16.0, row[0] + std::f64::consts::PI / 16.0);
        // cell average of sin^4 x over [a, b]
        let prim = |x: f64| 3.0 * x / 8.0 - (2.0 * x).sin() / 4.0 + (4.0 * x).sin() / 32.0;
        let exact = (prim(b) - prim(a)) / (b - a);
        assert!((row[1] - exact).abs() < 1e-9, "cell {j}: {} vs {exact}", row[1]);
    }
}

#[test]
fn solution_csv_in_2d_has_three_columns() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new("linear-2d", 1, 6);
    cfg.cells_y = Some(4);
    cfg.tfinal = Some(0.01);
    cfg.out = Some(dir.path().to_path_buf());
    run_single(&cfg).unwrap();
    let text = fs::read_to_string(dir.path().join("solution.csv")).unwrap();
    assert!(text.lines().any(|l| l == "x_center,y_center,u_bar"));
    let rows = csv_rows(&dir.path().join("solution.csv"));
    assert_eq!(rows.len(), 24);
    assert!(rows.iter().all(|r| r.len() == 3));
    // x runs fastest
    assert!(rows[1][0] > rows[0][0] && rows[1][1] == rows[0][1]);
}

#[test]
fn identical_configs_write_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new("buckley-leverett-1d", 2, 40);
    cfg.tfinal = Some(0.05);
    cfg.out = Some(a.path().to_path_buf());
    run_single(&cfg).unwrap();
    cfg.out = Some(b.path().to_path_buf());
    run_single(&cfg).unwrap();
    let csv = |d: &Path| fs::read(d.join("solution.csv")).unwrap();
    assert_eq!(csv(a.path()), csv(b.path()));
    let mut ra = read_json(&a.path().join("report.json"));
    let mut rb = read_json(&b.path().join("report.json"));
    for r in [&mut ra, &mut rb] {
        r["wall_time_seconds"] = Value::Null;
    }
    assert_eq!(ra, rb);
}

#[test]
fn reports_and_tables_match_their_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let report = schema("report.schema.json");
    let table = schema("table.schema.json");
    let mut cfg = RunConfig::new("porous-medium", 1, 20);
    cfg.tfinal = Some(0.05);
    cfg.out = Some(dir.path().join("run"));
    run_single(&cfg).unwrap();
    assert_valid(&report, &read_json(&dir.path().join("run/report.json")));

    let mut cfg = RunConfig::new("linear-2d", 2, 8);
    cfg.tfinal = Some(0.01);
    cfg.out = Some(dir.path().join("sweep"));
    run_convergence(&cfg, &[4, 8]).unwrap();
    let doc = read_json(&dir.path().join("sweep/table.json"));
    assert_valid(&table, &doc);
    for r in doc["reports"].as_array().unwrap() {
        assert_valid(&report, r);
    }
    assert_valid(&report, &read_json(&dir.path().join("sweep/n8/report.json")));
    let csv = fs::read_to_string(dir.path().join("sweep/table.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "cells,l1_error,l1_order,linf_error,linf_order,min,max");
    assert_eq!(csv.lines().count(), 3);

    let mut broken = read_json(&dir.path().join("run/report.json"));
    broken["min_theta"] = Value::from(1.5);
    assert!(!report.is_valid(&broken));
}

#[test]
fn config_files_set_every_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.cfg");
    fs::write(
        &path,
        "# swirl\nproblem = swirling\nparam = inv_re=0.01\norder = 1\ncells = 12\ncells_y = 10\n\
         tfinal = 0.2\ncflc = 0.2\ncfld = 0.05\np3-scaling = off\nmpp = off\ntvb = 50\n\
         flux-form = printed\nseed = 7\n",
    )
    .unwrap();
    let cfg = RunConfig::from_config_file(&path).unwrap();
    assert_eq!(cfg.problem, "swirling");
    assert_eq!(cfg.params["inv_re"], 0.01);
    assert_eq!((cfg.order, cfg.cells, cfg.cells_y), (1, 12, Some(10)));
    assert_eq!((cfg.tfinal, cfg.cflc, cfg.cfld), (Some(0.2), Some(0.2), Some(0.05)));
    assert!(!cfg.mpp && !cfg.p3_scaling);
    assert_eq!(cfg.seed, 7);
    cfg.validate().unwrap();

    fs::write(&path, "order = 2\ncells: 3\n").unwrap();
    let err = RunConfig::from_config_file(&path).unwrap_err().to_string();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn smooth_advection_diffusion_error_at_64_cells() {
    let mut cfg = RunConfig::new("linear-1d", 2, 64);
    cfg.tfinal = Some(1.0);
    let r = run_single(&cfg).unwrap().report;
    let l1 = r.l1_error.unwrap();
    assert!(l1 > 2.29e-5 / 2.0 && l1 < 2.29e-5 * 2.0, "{l1}");
    assert!(r.global_min >= -1e-12);
    assert!(r.relative_mass_change < 1e-12);
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mppdg"))
}

#[test]
fn cli_lists_problems() {
    let out = cli().arg("list-problems").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["linear-1d", "porous-medium", "buckley-leverett-2d", "vortex-patch"] {
        assert!(text.contains(name), "{text}");
    }
}

#[test]
fn cli_run_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = cli()
        .args(["run", "--problem", "jiangshu-advection", "--cells", "20", "--tfinal", "0.1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
    let written = read_json(&dir.path().join("report.json"));
    assert_eq!(printed["problem"], written["problem"]);
    assert_eq!(printed["steps"], written["steps"]);
    assert!(dir.path().join("solution.csv").exists());
}

#[test]
fn cli_converge_and_bounds_print_tables() {
    let out = cli()
        .args(["converge", "--problem", "linear-1d", "--meshes", "8,16", "--tfinal", "0.05"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
    let out = cli().args(["bounds", "bl-1d", "--meshes", "20"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("MPPDG min"));
}

#[test]
fn cli_rejects_bad_input() {
    for args in [
        vec!["run", "--order", "7"],
        vec!["run", "--problem", "nope"],
        vec!["run", "--problem", "linear-1d", "--cells-y", "4"],
        vec!["run", "--mpp", "maybe"],
        vec!["bounds", "everything"],
    ] {
        let out = cli().args(&args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}
