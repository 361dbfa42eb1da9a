//! Reproducible runs with JSON and CSV output: single simulations, convergence
//! sweeps and the DG versus MPPDG bound suites.

mod bounds;
mod config;
mod convergence;
mod run;

pub use bounds::{bounds_cases, run_bounds_suite, BoundsCase, BoundsReport, BoundsRow, Extremes, BOUNDS_SUITES};
pub use config::{RunConfig, Tvb};
pub use convergence::{convergence_orders, run_convergence, ConvergenceRow, ConvergenceTable};
pub use run::{run_single, write_solution_csv, RunOutput, RunReport, Solution};

use crate::error::{Error, Result};

/// Environment variable selecting the number of worker threads, `0` for automatic.
pub const THREADS_ENV: &str = "MPPDG_THREADS";

/// Sizes the global thread pool from [`THREADS_ENV`]. Returns the pool width.
/// Calling it after the pool exists only reports the current width.
pub fn init_threads() -> Result<usize> {
    let requested = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`")))?,
        Err(_) => 0,
    };
    // An error here means the pool was already built; keep it.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(requested).build_global();
    Ok(rayon::current_num_threads())
}
