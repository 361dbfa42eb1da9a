//! The harness driven by a key=value configuration file, the same format the
//! `mppdg run --config` command reads. Writes report.json and solution.csv.
//!
//!     cargo run --release --example config_run [config] [out_dir]

use std::path::PathBuf;

use mppdg::harness::{init_threads, run_single, RunConfig};

const DEFAULT: &str = "\
# porous medium, m = 5
problem = porous-medium
param = m=5
order = 3
cells = 80
tvb = 1
";

fn main() -> mppdg::Result<()> {
    init_threads()?;
    let mut args = std::env::args().skip(1);
    let mut cfg = match args.next() {
        Some(path) => RunConfig::from_config_file(path.as_ref())?,
        None => {
            let mut cfg = RunConfig::default();
            cfg.apply_config_str(DEFAULT)?;
            cfg
        }
    };
    cfg.out = Some(args.next().map_or_else(|| std::env::temp_dir().join("mppdg-run"), PathBuf::from));
    let out = run_single(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&out.report)?);
    println!("wrote {}", cfg.out.unwrap().display());
    Ok(())
}
