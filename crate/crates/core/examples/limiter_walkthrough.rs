//! One forward-Euler step of the flux limiter on a step profile, printed interface
//! by interface: the first-order flux, the high-order flux, theta and the result.
//!
//!     cargo run --release --example limiter_walkthrough

use mppdg::limiter::{apply_mpp_limiter_1d, compute_gamma_1d};
use mppdg::{get_problem, CflConfig, Discretization, Params, Scheme1D, SchemeOptions};

fn main() -> mppdg::Result<()> {
    let problem = get_problem("jiangshu-advection", &Params::new())?.into_1d().unwrap();
    let scheme = Scheme1D::new(problem, 12, 2, SchemeOptions::new(2))?;
    let u = scheme.project_initial()?;
    let ubar = u.averages();
    let dt = scheme.stable_dt(&u.coeffs, 0.0, &CflConfig::for_degree(2))?;
    let lambda = dt / scheme.grid.h;
    let bounds = scheme.problem.bounds;

    let (_, high) = scheme.rhs(&u.coeffs)?;
    let low = scheme.low_order_fluxes(&ubar);
    let gamma = compute_gamma_1d(&ubar, &low, bounds, lambda)?;
    let (limited, report) = apply_mpp_limiter_1d(&high, &low, &ubar, bounds, lambda, true)?;

    println!("lambda = {lambda:.4}, bounds [{}, {}]", bounds.lower, bounds.upper);
    println!("{:>4} {:>12} {:>12} {:>8}", "face", "low", "high", "theta");
    for (i, t) in report.theta_x.iter().enumerate() {
        println!("{i:>4} {:>12.6} {:>12.6} {t:>8.4}", low.x[i], high.x[i]);
    }
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "cell", "u_bar", "room up", "room down", "limited");
    for j in 0..ubar.len() {
        let next = ubar[j] - lambda * (limited.x[j + 1] - limited.x[j]);
        println!("{j:>4} {:>12.6} {:>12.6} {:>12.6} {next:>12.6}", ubar[j], gamma.max[j], gamma.min[j]);
    }
    println!("{} interfaces limited", report.activated);
    Ok(())
}
