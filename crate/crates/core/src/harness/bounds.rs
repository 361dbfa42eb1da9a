use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{RunConfig, Tvb};
use super::run::{run_single, RunReport};
use crate::error::{Error, Result};
use crate::problem::BoundPair;

pub const BOUNDS_SUITES: &[&str] = &["porous-1d", "bl-1d", "bl-2d", "rigid", "swirl", "vortex"];

/// One configuration of a suite, run once without and once with the flux limiter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsCase {
    pub label: String,
    pub config: RunConfig,
}

/// Extremes of the cell averages at the final time and over the whole run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extremes {
    pub min: f64,
    pub max: f64,
    pub global_min: f64,
    pub global_max: f64,
    pub steps: usize,
    pub limiter_activations: usize,
    pub min_theta: f64,
    pub relative_mass_change: f64,
}

impl From<&RunReport> for Extremes {
    fn from(r: &RunReport) -> Self {
        Self {
            min: r.final_min,
            max: r.final_max,
            global_min: r.global_min,
            global_max: r.global_max,
            steps: r.steps,
            limiter_activations: r.limiter_activations,
            min_theta: r.min_theta,
            relative_mass_change: r.relative_mass_change,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub label: String,
    pub cells: usize,
    pub bounds: BoundPair,
    pub dg: Extremes,
    pub mppdg: Extremes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub suite: String,
    pub rows: Vec<BoundsRow>,
}

fn case(label: String, problem: &str, params: &[(&str, f64)], k: usize, n: usize, tvb: Tvb) -> BoundsCase {
    let mut config = RunConfig::new(problem, k, n);
    config.params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    config.tvb = tvb;
    BoundsCase { label, config }
}

/// The configurations of `suite`. `meshes` replaces the default cell counts.
pub fn bounds_cases(suite: &str, meshes: Option<&[usize]>) -> Result<Vec<BoundsCase>> {
    let pick = |default: &[usize]| meshes.map_or_else(|| default.to_vec(), <[usize]>::to_vec);
    let mut cases = Vec::new();
    match suite {
        "porous-1d" => {
            for n in pick(&[80]) {
                for m in [2.0, 3.0, 5.0, 8.0] {
                    cases.push(case(format!("m={m}"), "porous-medium", &[("m", m)], 3, n, Tvb::M(1.0)));
                }
            }
        }
        "bl-1d" => {
            for n in pick(&[100]) {
                for k in 1..=3 {
                    cases.push(case(format!("P{k}"), "buckley-leverett-1d", &[], k, n, Tvb::M(10.0)));
                }
            }
        }
        "bl-2d" => {
            for n in pick(&[16, 32, 64, 128]) {
                cases.push(case("P2".into(), "buckley-leverett-2d", &[], 2, n, Tvb::M(50.0)));
            }
        }
        "rigid" | "swirl" => {
            let name = if suite == "rigid" { "rigid-rotation" } else { "swirling" };
            for n in pick(&[8, 16, 32, 64, 128]) {
                cases.push(case("1/Re=0.01".into(), name, &[("inv_re", 0.01)], 2, n, Tvb::M(50.0)));
            }
        }
        "vortex" => {
            for n in pick(&[8, 16, 32, 64]) {
                cases.push(case("Re=100".into(), "vortex-patch", &[], 2, n, Tvb::Off));
            }
        }
        _ => {
            return Err(Error::invalid(format!(
                "unknown bounds suite `{suite}` (expected one of {})",
                BOUNDS_SUITES.join(", ")
            )))
        }
    }
    Ok(cases)
}

/// Runs every case of `suite` with the limiter off and on and reports the extremes
/// side by side.
pub fn run_bounds_suite(suite: &str, meshes: Option<&[usize]>) -> Result<BoundsReport> {
    let cases = bounds_cases(suite, meshes)?;
    let rows = cases
        .par_iter()
        .map(|c| {
            let mut dg = c.config.clone();
            dg.mpp = false;
            let dg = run_single(&dg)?.report;
            let mppdg = run_single(&c.config)?.report;
            Ok(BoundsRow {
                label: c.label.clone(),
                cells: c.config.cells,
                bounds: mppdg.bounds,
                dg: (&dg).into(),
                mppdg: (&mppdg).into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsReport {
        suite: suite.to_string(),
        rows,
    })
}

impl BoundsReport {
    /// Final-time extremes, DG beside MPPDG.
    pub fn render(&self) -> String {
        let mut s = format!(
            "{:>10} {:>6} {:>22} {:>22} {:>22} {:>22}\n",
            "case", "N", "DG min", "DG max", "MPPDG min", "MPPDG max"
        );
        for r in &self.rows {
            s += &format!(
                "{:>10} {:>6} {:>22.13} {:>22.13} {:>22.13} {:>22.13}\n",
                r.label, r.cells, r.dg.min, r.dg.max, r.mppdg.min, r.mppdg.max
            );
        }
        s
    }
}
