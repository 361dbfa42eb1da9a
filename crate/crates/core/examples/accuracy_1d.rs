//! Convergence of P2 and P3 MPPDG on u_t + u_x = eps u_xx with u0 = sin^4 x.
//!
//!     cargo run --release --example accuracy_1d

use mppdg::field::exact_error_1d;
use mppdg::{evolve, get_problem, CflConfig, Params, Scheme1D, SchemeOptions};

fn main() -> mppdg::Result<()> {
    let problem = get_problem("linear-1d", &Params::new())?.into_1d().unwrap();
    for (k, p3) in [(2, false), (3, true)] {
        println!("P{k}{}", if p3 { " (dt ~ h^4/3)" } else { "" });
        println!("{:>5} {:>10} {:>6} {:>10} {:>6} {:>18}", "N", "L1", "order", "Linf", "order", "min average");
        let mut prev: Option<(f64, f64)> = None;
        for n in [16, 32, 64, 128, 256] {
            let scheme = Scheme1D::new(problem.clone(), n, k, SchemeOptions::new(k))?;
            let mut u = scheme.project_initial()?.coeffs;
            let cfl = CflConfig {
                p3_time_scaling: p3,
                ..CflConfig::for_degree(k)
            };
            let stats = evolve(&scheme, &mut u, problem.final_time, &cfl)?;
            let (l1, linf) = exact_error_1d(&scheme.field(u), &problem, problem.final_time)?;
            let (o1, oinf) = prev.map_or((f64::NAN, f64::NAN), |(a, b)| ((a / l1).log2(), (b / linf).log2()));
            println!("{n:>5} {l1:>10.2e} {o1:>6.2} {linf:>10.2e} {oinf:>6.2} {:>18.13}", stats.global_min);
            prev = Some((l1, linf));
        }
    }
    Ok(())
}
