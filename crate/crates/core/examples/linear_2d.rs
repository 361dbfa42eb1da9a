//! Mesh sweep for u_t + u_x + u_y = eps (u_xx + u_yy) through the harness, DG and
//! MPPDG side by side. Pass a directory to also write table.csv, table.json and the
//! per-mesh report.json and solution.csv.
//!
//!     cargo run --release --example linear_2d [out_dir]

use std::path::PathBuf;

use mppdg::harness::{run_convergence, RunConfig};

fn main() -> mppdg::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    for mpp in [false, true] {
        let mut cfg = RunConfig::new("linear-2d", 2, 8);
        cfg.mpp = mpp;
        cfg.out = out.as_ref().map(|d| d.join(if mpp { "mppdg" } else { "dg" }));
        let table = run_convergence(&cfg, &[8, 16, 32, 64])?;
        println!("{}", if mpp { "MPPDG" } else { "DG" });
        print!("{}", table.render());
    }
    Ok(())
}
