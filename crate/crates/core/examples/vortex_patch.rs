//! Two opposite vortex patches at Re = 100. The vorticity must stay in [-1, 1];
//! writes report.json and solution.csv when given a directory.
//!
//!     cargo run --release --example vortex_patch [cells] [out_dir]

use std::path::PathBuf;

use mppdg::harness::{run_single, RunConfig, Tvb};

fn main() -> mppdg::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(32);
    let out = args.next().map(PathBuf::from);
    for mpp in [false, true] {
        let mut cfg = RunConfig::new("vortex-patch", 2, n);
        cfg.mpp = mpp;
        cfg.tvb = Tvb::Off;
        cfg.out = out.as_ref().filter(|_| mpp).cloned();
        let r = run_single(&cfg)?.report;
        println!(
            "{:<6} final [{:.13}, {:.13}]  mass {:.1e}  limited steps {}",
            if mpp { "MPPDG" } else { "DG" },
            r.final_min,
            r.final_max,
            r.final_mass,
            r.limited_steps
        );
    }
    Ok(())
}
