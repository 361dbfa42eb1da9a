//! Gaussian cluster, square wave, triangle and half ellipse advected four times
//! around a periodic interval,
//! comparing no limiter, the TVB limiter, the flux limiter and both.
//!
//!     cargo run --release --example shapes_advection

use mppdg::{evolve, get_problem, CflConfig, Params, Scheme1D, SchemeOptions};

fn main() -> mppdg::Result<()> {
    let problem = get_problem("jiangshu-advection", &Params::new())?.into_1d().unwrap();
    println!("{:<12} {:>18} {:>18}", "limiters", "min", "max");
    for (label, mpp, tvb) in [("none", false, None), ("TVB", false, Some(10.0)), ("MPP", true, None), ("MPP+TVB", true, Some(10.0))] {
        let options = SchemeOptions::new(2).with_mpp(mpp).with_tvb(tvb);
        let scheme = Scheme1D::new(problem.clone(), 200, 2, options)?;
        let mut u = scheme.project_initial()?.coeffs;
        let stats = evolve(&scheme, &mut u, problem.final_time, &CflConfig::for_degree(2))?;
        println!("{label:<12} {:>18.3e} {:>18.13}", stats.global_min, stats.global_max);
    }
    Ok(())
}
