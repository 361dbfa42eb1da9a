//! Buckley-Leverett with degenerate capillary diffusion: minimum cell average of
//! P1 to P3 solutions with and without the flux limiter, and the limiter's activity.
//!
//!     cargo run --release --example buckley_leverett_1d

use mppdg::{evolve, get_problem, CflConfig, Params, Scheme1D, SchemeOptions};

fn main() -> mppdg::Result<()> {
    let problem = get_problem("buckley-leverett-1d", &Params::new())?.into_1d().unwrap();
    println!("{:>3} {:>18} {:>18} {:>12} {:>10}", "k", "DG min", "MPPDG min", "limited", "min theta");
    for k in 1..=3 {
        let mut row = Vec::new();
        let mut limited = (0, 1.0);
        for mpp in [false, true] {
            let options = SchemeOptions::new(k).with_mpp(mpp).with_tvb(Some(10.0));
            let scheme = Scheme1D::new(problem.clone(), 100, k, options)?;
            let mut u = scheme.project_initial()?.coeffs;
            let stats = evolve(&scheme, &mut u, problem.final_time, &CflConfig::for_degree(k))?;
            row.push(stats.global_min);
            if mpp {
                limited = (stats.limiter_activations, stats.min_theta);
            }
        }
        println!("{k:>3} {:>18.3e} {:>18.3e} {:>12} {:>10.4}", row[0], row[1], limited.0, limited.1);
    }
    Ok(())
}
