//! Two-dimensional Buckley-Leverett with gravity: the unlimited scheme leaves
//! [0, 1] while the limited one stays inside.
//!
//!     cargo run --release --example buckley_leverett_2d [cells]

use mppdg::{evolve, get_problem, CflConfig, Params, Scheme2D, SchemeOptions};

fn main() -> mppdg::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(32);
    let problem = get_problem("buckley-leverett-2d", &Params::new())?.into_2d().unwrap();
    for mpp in [false, true] {
        let options = SchemeOptions::new(2).with_mpp(mpp).with_tvb(Some(50.0));
        let scheme = Scheme2D::new(problem.clone(), n, n, 2, options)?;
        let mut u = scheme.project_initial()?.coeffs;
        let stats = evolve(&scheme, &mut u, problem.final_time, &CflConfig::for_degree(2))?;
        println!(
            "{:<6} {n}x{n}: averages in [{:.6e}, {:.13}] over {} steps",
            if mpp { "MPPDG" } else { "DG" },
            stats.global_min,
            stats.global_max,
            stats.steps
        );
    }
    Ok(())
}
