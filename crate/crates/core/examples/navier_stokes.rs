//! Vorticity-stream-function Navier-Stokes with the decaying Taylor-Green vortex:
//! error against the exact solution and the velocity recovered from the vorticity.
//!
//!     cargo run --release --example navier_stokes

use mppdg::field::exact_error_2d;
use mppdg::{evolve, get_problem, CflConfig, Params, Scheme2D, SchemeOptions};

fn main() -> mppdg::Result<()> {
    let problem = get_problem("ns-accuracy", &Params::new())?.into_2d().unwrap();
    let t = problem.final_time;
    let mut prev = None;
    println!("{:>5} {:>10} {:>6} {:>8} {:>12}", "N", "L1", "order", "steps", "max |u|");
    for n in [8, 16, 32, 64] {
        let scheme = Scheme2D::new(problem.clone(), n, n, 2, SchemeOptions::new(2))?;
        let mut u = scheme.project_initial()?.coeffs;
        let stats = evolve(&scheme, &mut u, t, &CflConfig::for_degree(2))?;
        let speed = scheme.velocity_samples(&u, t)?.map_or(0.0, |s| s.max_u());
        let (l1, _) = exact_error_2d(&scheme.field(u), &problem, t)?;
        let order = prev.map_or(f64::NAN, |p: f64| (p / l1).log2());
        println!("{n:>5} {l1:>10.2e} {order:>6.2} {:>8} {speed:>12.6}", stats.steps);
        prev = Some(l1);
    }
    Ok(())
}
