use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::run::{run_single, RunReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    /// Cells per direction.
    pub cells: usize,
    pub l1_error: f64,
    /// `None` on the first row.
    pub l1_order: Option<f64>,
    pub linf_error: f64,
    pub linf_order: Option<f64>,
    /// Extremes of the final cell averages.
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub problem: String,
    pub order: usize,
    pub mpp: bool,
    pub rows: Vec<ConvergenceRow>,
    pub reports: Vec<RunReport>,
}

/// `log2(e[i-1] / e[i])`, `None` for the first entry.
pub fn convergence_orders(errors: &[f64]) -> Vec<Option<f64>> {
    (0..errors.len())
        .map(|i| (i > 0).then(|| (errors[i - 1] / errors[i]).log2()))
        .collect()
}

/// Runs `template` on every mesh (cells per direction, concurrently) and tabulates
/// the errors. When `template.out` is set each run writes into a `n<cells>`
/// subdirectory and the table goes to table.json and table.csv.
pub fn run_convergence(template: &RunConfig, meshes: &[usize]) -> Result<ConvergenceTable> {
    if meshes.is_empty() {
        return Err(Error::invalid("convergence needs at least one mesh"));
    }
    let mut probe = template.clone();
    probe.cells = meshes[0];
    probe.cells_y = None;
    let problem = probe.validate()?;
    if !problem.has_exact() {
        return Err(Error::Unsupported(format!("`{}` has no exact solution", template.problem)));
    }
    let reports = meshes
        .par_iter()
        .map(|&n| {
            let mut cfg = template.clone();
            cfg.cells = n;
            cfg.cells_y = (problem.dimension() == 2).then_some(n);
            cfg.out = template.out.as_ref().map(|d| d.join(format!("n{n}")));
            run_single(&cfg).map(|o| o.report)
        })
        .collect::<Result<Vec<_>>>()?;
    let l1: Vec<f64> = reports.iter().map(|r| r.l1_error.unwrap_or(f64::NAN)).collect();
    let linf: Vec<f64> = reports.iter().map(|r| r.linf_error.unwrap_or(f64::NAN)).collect();
    let rows = convergence_orders(&l1)
        .into_iter()
        .zip(convergence_orders(&linf))
        .enumerate()
        .map(|(i, (o1, oinf))| ConvergenceRow {
            cells: meshes[i],
            l1_error: l1[i],
            l1_order: o1,
            linf_error: linf[i],
            linf_order: oinf,
            min: reports[i].final_min,
            max: reports[i].final_max,
        })
        .collect();
    let table = ConvergenceTable {
        problem: template.problem.clone(),
        order: template.order,
        mpp: template.mpp,
        rows,
        reports,
    };
    if let Some(dir) = &template.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("table.json"), serde_json::to_string_pretty(&table)?)?;
        table.write_csv(&dir.join("table.csv"))?;
    }
    Ok(table)
}

impl ConvergenceTable {
    /// One row per mesh: `cells,l1_error,l1_order,linf_error,linf_order,min,max`,
    /// with blank orders on the first row.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.into()))?;
        let csv_err = |e: csv::Error| Error::Io(e.into());
        w.write_record(["cells", "l1_error", "l1_order", "linf_error", "linf_order", "min", "max"])
            .map_err(csv_err)?;
        for r in &self.rows {
            w.serialize((r.cells, r.l1_error, r.l1_order, r.linf_error, r.linf_order, r.min, r.max))
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Fixed-width text rendering in the usual error-table layout.
    pub fn render(&self) -> String {
        let order = |o: Option<f64>| o.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        let mut s = format!(
            "{:>6} {:>10} {:>6} {:>10} {:>6} {:>22} {:>22}\n",
            "N", "L1", "order", "Linf", "order", "min", "max"
        );
        for r in &self.rows {
            s += &format!(
                "{:>6} {:>10.2e} {:>6} {:>10.2e} {:>6} {:>22.13} {:>22.13}\n",
                r.cells,
                r.l1_error,
                order(r.l1_order),
                r.linf_error,
                order(r.linf_order),
                r.min,
                r.max
            );
        }
        s
    }
}
