//! Slotted disk, cone and hump carried by a prescribed velocity with 1/Re = 0.01:
//! rigid rotation on a zero-boundary square and the periodic swirling flow.
//!
//!     cargo run --release --example passive_transport [cells]

use mppdg::harness::{bounds_cases, run_bounds_suite};

fn main() -> mppdg::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(32);
    for suite in ["rigid", "swirl"] {
        let case = &bounds_cases(suite, Some(&[n]))?[0];
        println!("{} ({} cells per side)", case.config.problem, n);
        print!("{}", run_bounds_suite(suite, Some(&[n]))?.render());
    }
    Ok(())
}
