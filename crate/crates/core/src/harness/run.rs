use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::{exact_error_1d, exact_error_2d};
use crate::flux::FluxForm;
use crate::operator::{Scheme1D, Scheme2D};
use crate::problem::{BoundPair, Params, Problem};
use crate::time::{evolve, RunStats};

/// Everything a run reports. Written as report.json.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub params: Params,
    pub dimension: usize,
    pub order: usize,
    /// `[n]` in 1D, `[nx, ny]` in 2D.
    pub cells: Vec<usize>,
    pub final_time: f64,
    pub cflc: f64,
    pub cfld: f64,
    pub p3_scaling: bool,
    pub mpp: bool,
    pub tvb: Option<f64>,
    pub flux_form: FluxForm,
    pub bounds: BoundPair,
    pub seed: u64,
    pub steps: usize,
    pub l1_error: Option<f64>,
    pub linf_error: Option<f64>,
    pub global_min: f64,
    pub global_max: f64,
    pub final_min: f64,
    pub final_max: f64,
    pub limiter_activations: usize,
    pub limited_steps: usize,
    pub min_theta: f64,
    pub initial_mass: f64,
    pub final_mass: f64,
    pub relative_mass_change: f64,
    pub threads: usize,
    pub wall_time_seconds: f64,
}

/// Final cell averages and their centers. `y` is empty in 1D; in 2D cell `(i, j)`
/// is entry `j * x.len() + i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub averages: Vec<f64>,
    /// Full modal coefficients, cell by cell.
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub solution: Solution,
}

struct Outcome {
    stats: RunStats,
    errors: Option<(f64, f64)>,
    solution: Solution,
    cells: Vec<usize>,
}

fn run_1d(cfg: &RunConfig, problem: Problem, tfinal: f64) -> Result<Outcome> {
    let options = cfg.scheme_options(&problem);
    let p = problem.into_1d().expect("dimension checked");
    let scheme = Scheme1D::new(p, cfg.cells, cfg.order, options)?;
    let mut u = scheme.project_initial()?.coeffs;
    let stats = evolve(&scheme, &mut u, tfinal, &cfg.cfl())?;
    let field = scheme.field(u);
    let errors = match exact_error_1d(&field, &scheme.problem, tfinal) {
        Ok(e) => Some(e),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let g = scheme.grid;
    Ok(Outcome {
        stats,
        errors,
        solution: Solution {
            x: (0..g.n).map(|j| g.center(j)).collect(),
            y: Vec::new(),
            averages: field.averages(),
            coeffs: field.coeffs,
        },
        cells: vec![g.n],
    })
}

fn run_2d(cfg: &RunConfig, problem: Problem, tfinal: f64) -> Result<Outcome> {
    let options = cfg.scheme_options(&problem);
    let p = problem.into_2d().expect("dimension checked");
    let ny = cfg.cells_y.unwrap_or(cfg.cells);
    let scheme = Scheme2D::new(p, cfg.cells, ny, cfg.order, options)?;
    let mut u = scheme.project_initial()?.coeffs;
    let stats = evolve(&scheme, &mut u, tfinal, &cfg.cfl())?;
    let field = scheme.field(u);
    let errors = match exact_error_2d(&field, &scheme.problem, tfinal) {
        Ok(e) => Some(e),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let g = scheme.grid;
    Ok(Outcome {
        stats,
        errors,
        solution: Solution {
            x: (0..g.nx()).map(|i| g.x.center(i)).collect(),
            y: (0..g.ny()).map(|j| g.y.center(j)).collect(),
            averages: field.averages(),
            coeffs: field.coeffs,
        },
        cells: vec![g.nx(), g.ny()],
    })
}

/// Validates `cfg`, runs it to the final time and, when `cfg.out` is set, writes
/// report.json and solution.csv there.
pub fn run_single(cfg: &RunConfig) -> Result<RunOutput> {
    let problem = cfg.validate()?;
    let tfinal = cfg.final_time(&problem);
    let dimension = problem.dimension();
    let bounds = problem.bounds();
    let tvb = cfg.effective_tvb(&problem);
    let cfl = cfg.cfl();
    let clock = Instant::now();
    let out = if dimension == 1 {
        run_1d(cfg, problem, tfinal)?
    } else {
        run_2d(cfg, problem, tfinal)?
    };
    let s = &out.stats;
    let report = RunReport {
        problem: cfg.problem.clone(),
        params: cfg.params.clone(),
        dimension,
        order: cfg.order,
        cells: out.cells,
        final_time: s.final_time,
        cflc: cfl.cflc,
        cfld: cfl.cfld,
        p3_scaling: cfl.p3_time_scaling,
        mpp: cfg.mpp,
        tvb,
        flux_form: cfg.flux_form,
        bounds,
        seed: cfg.seed,
        steps: s.steps,
        l1_error: out.errors.map(|e| e.0),
        linf_error: out.errors.map(|e| e.1),
        global_min: s.global_min,
        global_max: s.global_max,
        final_min: s.final_min,
        final_max: s.final_max,
        limiter_activations: s.limiter_activations,
        limited_steps: s.limited_steps,
        min_theta: s.min_theta,
        initial_mass: s.initial_mass,
        final_mass: s.final_mass,
        relative_mass_change: s.relative_mass_change(),
        threads: rayon::current_num_threads(),
        wall_time_seconds: clock.elapsed().as_secs_f64(),
    };
    let output = RunOutput {
        report,
        solution: out.solution,
    };
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), serde_json::to_string_pretty(&output.report)?)?;
        write_solution_csv(&dir.join("solution.csv"), &output.report, &output.solution)?;
    }
    Ok(output)
}

/// Cell averages as CSV: `x_center,u_bar` in 1D and `x_center,y_center,u_bar` in 2D,
/// after `#` lines describing the run.
pub fn write_solution_csv(path: &Path, report: &RunReport, solution: &Solution) -> Result<()> {
    let mut file = fs::File::create(path)?;
    let dims: Vec<String> = report.cells.iter().map(|n| n.to_string()).collect();
    writeln!(file, "# problem: {}", report.problem)?;
    for (k, v) in &report.params {
        writeln!(file, "# param: {k}={v}")?;
    }
    writeln!(file, "# order: {}", report.order)?;
    writeln!(file, "# cells: {}", dims.join("x"))?;
    writeln!(file, "# time: {}", report.final_time)?;
    writeln!(file, "# mpp: {}", if report.mpp { "on" } else { "off" })?;
    match report.tvb {
        Some(m) => writeln!(file, "# tvb: {m}")?,
        None => writeln!(file, "# tvb: off")?,
    }
    writeln!(file, "# bounds: {} {}", report.bounds.lower, report.bounds.upper)?;
    let mut w = csv::Writer::from_writer(file);
    let csv_err = |e: csv::Error| Error::Io(e.into());
    if solution.y.is_empty() {
        w.write_record(["x_center", "u_bar"]).map_err(csv_err)?;
        for (x, u) in solution.x.iter().zip(&solution.averages) {
            w.serialize((x, u)).map_err(csv_err)?;
        }
    } else {
        w.write_record(["x_center", "y_center", "u_bar"]).map_err(csv_err)?;
        let nx = solution.x.len();
        for (c, u) in solution.averages.iter().enumerate() {
            w.serialize((solution.x[c % nx], solution.y[c / nx], u)).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}
