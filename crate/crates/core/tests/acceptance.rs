//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Runs the full benchmark sweeps, so expect several minutes in release mode.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use mppdg::harness::{
    init_threads, run_bounds_suite, run_convergence, BoundsReport, ConvergenceTable, Extremes, RunConfig,
};
use mppdg::limiter::LimiterReport;
use mppdg::{
    evolve, get_problem, BoundPair, Boundary, CflConfig, Discretization, FluxRecord, Params, Problem, Scheme1D,
    Scheme2D, SchemeOptions,
};

/// Slack on every bound check.
const BOUND_TOL: f64 = 1e-12;
/// Allowed deviation of a final convergence order from its target.
const ORDER_TOL: f64 = 0.3;
/// Allowed factor between a computed L1 error and its reference value.
const L1_FACTOR: f64 = 2.0;
const MASS_TOL: f64 = 1e-11;
const DG_MPP_AGREEMENT: f64 = 1e-9;
const STEADY_TOL: f64 = 1e-13;
const RK3_TOL: f64 = 1e-14;
const ORACLE_SEEDS: u64 = 1000;

const P2_1D_L1: [f64; 5] = [1.56e-3, 1.86e-4, 2.29e-5, 2.86e-6, 3.59e-7];
const P3_1D_L1: [f64; 5] = [1.26e-4, 8.13e-6, 5.03e-7, 3.11e-8, 1.90e-9];
const LINEAR_2D_DG_L1: [f64; 5] = [5.17e-2, 6.80e-3, 7.22e-4, 8.55e-5, 1.05e-5];
const LINEAR_2D_MPP_L1: [f64; 5] = [5.17e-2, 6.56e-3, 7.17e-4, 8.53e-5, 1.05e-5];
const NS_L1: [f64; 5] = [6.25e-3, 7.77e-4, 9.31e-5, 1.11e-5, 1.35e-6];

/// Run-level facts collected for the property criterion.
#[derive(Default)]
struct Ledger {
    /// `(label, relative mass change)` of every periodic run.
    periodic: Vec<(String, f64)>,
    /// `(label, min theta, global min, global max, bounds)` of every limited run.
    limited: Vec<(String, f64, f64, f64, BoundPair)>,
}

impl Ledger {
    fn add(&mut self, label: String, problem: &str, params: &Params, mpp: bool, e: &Extremes, bounds: BoundPair) {
        let periodic = match get_problem(problem, params) {
            Ok(Problem::OneD(p)) => p.boundary == Boundary::Periodic,
            Ok(Problem::TwoD(p)) => p.boundary == Boundary::Periodic,
            Err(_) => false,
        };
        if periodic {
            self.periodic.push((label.clone(), e.relative_mass_change));
        }
        if mpp {
            self.limited.push((label, e.min_theta, e.global_min, e.global_max, bounds));
        }
    }

    fn add_table(&mut self, t: &ConvergenceTable) {
        for r in &t.reports {
            let label = format!("{} k={} N={} mpp={}", r.problem, r.order, r.cells[0], r.mpp);
            self.add(label, &r.problem, &r.params, r.mpp, &r.into(), r.bounds);
        }
    }

    fn add_bounds(&mut self, b: &BoundsReport, cases: &[RunConfig]) {
        for (row, cfg) in b.rows.iter().zip(cases) {
            for (mpp, e) in [(false, &row.dg), (true, &row.mppdg)] {
                let label = format!("{} {} N={} mpp={mpp}", b.suite, row.label, row.cells);
                self.add(label, &cfg.problem, &cfg.params, mpp, e, row.bounds);
            }
        }
    }
}

struct Outcome {
    checks: Vec<(bool, String)>,
}

impl Outcome {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.checks.push((ok, detail));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.0)
    }

    fn summary(&self) -> String {
        let failing: Vec<&str> = self.checks.iter().filter(|c| !c.0).map(|c| c.1.as_str()).collect();
        if failing.is_empty() {
            self.checks.iter().map(|c| c.1.as_str()).collect::<Vec<_>>().join("; ")
        } else {
            failing.join("; ")
        }
    }
}

fn last_order(t: &ConvergenceTable) -> f64 {
    t.rows.last().and_then(|r| r.l1_order).unwrap_or(f64::NAN)
}

fn check_order(o: &mut Outcome, name: &str, t: &ConvergenceTable, target: f64) {
    let order = last_order(t);
    o.check((order - target).abs() <= ORDER_TOL, format!("{name} final L1 order {order:.2} (target {target})"));
}

fn check_l1(o: &mut Outcome, name: &str, t: &ConvergenceTable, reference: &[f64]) {
    let worst = t
        .rows
        .iter()
        .zip(reference)
        .map(|(r, &p)| (r.l1_error / p).max(p / r.l1_error))
        .fold(1.0, f64::max);
    o.check(
        worst <= L1_FACTOR && t.rows.len() == reference.len(),
        format!("{name} L1 within {worst:.2}x of reference"),
    );
}

fn sweep(problem: &str, order: usize, mpp: bool, p3: bool, meshes: &[usize]) -> mppdg::Result<ConvergenceTable> {
    let mut cfg = RunConfig::new(problem, order, meshes[0]);
    cfg.mpp = mpp;
    cfg.p3_scaling = p3;
    run_convergence(&cfg, meshes)
}

fn table_1(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let meshes = [16, 32, 64, 128, 256];
    let p2 = sweep("linear-1d", 2, true, false, &meshes)?;
    let p3 = sweep("linear-1d", 3, true, true, &meshes)?;
    let mut o = Outcome::new();
    check_order(&mut o, "P2", &p2, 3.0);
    check_order(&mut o, "P3", &p3, 4.0);
    let min = p2.reports.iter().map(|r| r.global_min).fold(f64::INFINITY, f64::min);
    o.check(min >= -BOUND_TOL, format!("P2 min {min:.3e}"));
    check_l1(&mut o, "P2", &p2, &P2_1D_L1);
    check_l1(&mut o, "P3", &p3, &P3_1D_L1);
    ledger.add_table(&p2);
    ledger.add_table(&p3);
    Ok(o)
}

fn configs(suite: &str) -> Vec<RunConfig> {
    mppdg::harness::bounds_cases(suite, None)
        .unwrap()
        .into_iter()
        .map(|c| c.config)
        .collect()
}

fn suite(name: &str, ledger: &mut Ledger) -> mppdg::Result<BoundsReport> {
    let report = run_bounds_suite(name, None)?;
    ledger.add_bounds(&report, &configs(name));
    Ok(report)
}

fn mpp_within(o: &mut Outcome, report: &BoundsReport, lower: f64, upper: f64) {
    for r in &report.rows {
        let (lo, hi) = (r.mppdg.global_min, r.mppdg.global_max);
        o.check(
            lo >= lower - BOUND_TOL && hi <= upper + BOUND_TOL,
            format!("{} N={} MPPDG [{lo:.3e}, {hi:.13}]", r.label, r.cells),
        );
    }
}

fn table_2(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let report = suite("porous-1d", ledger)?;
    let mut o = Outcome::new();
    for r in &report.rows {
        let ok = r.mppdg.global_min >= -BOUND_TOL;
        o.check(ok, format!("{} MPPDG min {:.3e}", r.label, r.mppdg.global_min));
        if r.label == "m=2" || r.label == "m=3" {
            let detail = format!("{} DG min over the run {:.3e} (final {:.3e})", r.label, r.dg.global_min, r.dg.min);
            o.check(r.dg.global_min < 0.0, detail);
        }
    }
    Ok(o)
}

fn table_3(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let report = suite("bl-1d", ledger)?;
    let mut o = Outcome::new();
    for r in &report.rows {
        let ok = r.mppdg.global_min >= -BOUND_TOL;
        o.check(ok, format!("{} MPPDG min {:.3e} (DG {:.3e})", r.label, r.mppdg.global_min, r.dg.min));
    }
    Ok(o)
}

fn table_4(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let meshes = [8, 16, 32, 64, 128];
    let dg = sweep("linear-2d", 2, false, false, &meshes)?;
    let mpp = sweep("linear-2d", 2, true, false, &meshes)?;
    let mut o = Outcome::new();
    check_order(&mut o, "DG", &dg, 3.02);
    check_order(&mut o, "MPPDG", &mpp, 3.02);
    check_l1(&mut o, "DG", &dg, &LINEAR_2D_DG_L1);
    check_l1(&mut o, "MPPDG", &mpp, &LINEAR_2D_MPP_L1);
    let at = |t: &ConvergenceTable| t.reports.iter().find(|r| r.cells[0] == 32).map(|r| r.global_min);
    let (dg32, mpp32) = (at(&dg).unwrap_or(f64::NAN), at(&mpp).unwrap_or(f64::NAN));
    o.check(mpp32 >= -BOUND_TOL, format!("32^2 MPPDG min {mpp32:.3e}"));
    o.check(dg32 < 0.0, format!("32^2 DG min {dg32:.3e}"));
    ledger.add_table(&dg);
    ledger.add_table(&mpp);
    Ok(o)
}

fn table_5(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let report = suite("bl-2d", ledger)?;
    let mut o = Outcome::new();
    mpp_within(&mut o, &report, 0.0, 1.0);
    for r in &report.rows {
        let (lo, hi) = (r.dg.global_min, r.dg.global_max);
        let violates = lo < -BOUND_TOL || hi > 1.0 + BOUND_TOL;
        o.check(violates, format!("N={} DG [{lo:.3e}, {hi:.6}]", r.cells));
    }
    Ok(o)
}

fn tables_6_7(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let mut o = Outcome::new();
    for name in ["rigid", "swirl"] {
        let report = suite(name, ledger)?;
        let before = o.checks.len();
        mpp_within(&mut o, &report, 0.0, 1.0);
        for c in &mut o.checks[before..] {
            c.1 = format!("{name} {}", c.1);
        }
    }
    Ok(o)
}

fn table_8(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let meshes = [8, 16, 32, 64, 128];
    let dg = sweep("ns-accuracy", 2, false, false, &meshes)?;
    let mpp = sweep("ns-accuracy", 2, true, false, &meshes)?;
    let mut o = Outcome::new();
    check_order(&mut o, "MPPDG", &mpp, 3.04);
    check_order(&mut o, "DG", &dg, 3.04);
    check_l1(&mut o, "MPPDG", &mpp, &NS_L1);
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs());
    let worst = dg
        .rows
        .iter()
        .zip(&mpp.rows)
        .flat_map(|(a, b)| {
            [rel(a.l1_error, b.l1_error), rel(a.linf_error, b.linf_error), rel(a.min, b.min), rel(a.max, b.max)]
        })
        .fold(0.0, f64::max);
    o.check(worst <= DG_MPP_AGREEMENT, format!("DG vs MPPDG rows differ by {worst:.1e} relative"));
    ledger.add_table(&dg);
    ledger.add_table(&mpp);
    Ok(o)
}

fn table_9(ledger: &mut Ledger) -> mppdg::Result<Outcome> {
    let report = suite("vortex", ledger)?;
    let mut o = Outcome::new();
    mpp_within(&mut o, &report, -1.0, 1.0);
    Ok(o)
}

/// `u' = -u` on one cell, stepped with `dt = 0.1`.
struct Decay;

impl Discretization for Decay {
    fn modes(&self) -> usize {
        1
    }
    fn bounds(&self) -> BoundPair {
        BoundPair::new(0.0, 1.0)
    }
    fn cell_volume(&self) -> f64 {
        1.0
    }
    fn is_periodic(&self) -> bool {
        true
    }
    fn rhs(&self, u: &[f64], _t: f64) -> mppdg::Result<(Vec<f64>, FluxRecord)> {
        Ok((u.iter().map(|v| -v).collect(), FluxRecord::zeros_1d(1)))
    }
    fn stable_dt(&self, _u: &[f64], _t: f64, _cfl: &CflConfig) -> mppdg::Result<f64> {
        Ok(0.1)
    }
    fn limit_stage(&self, _u: &mut [f64]) {}
    fn mpp_enabled(&self) -> bool {
        false
    }
    fn limit_averages(&self, u: &[f64], _: f64, _: f64, _: &FluxRecord) -> mppdg::Result<(Vec<f64>, LimiterReport)> {
        Ok((u.to_vec(), LimiterReport::default()))
    }
}

fn constant_state_defect(name: &str, c: f64) -> mppdg::Result<f64> {
    let cfl = CflConfig::for_degree(2);
    let constant = |d: usize, cells: usize| {
        let mut u = vec![0.0; d * cells];
        u.iter_mut().step_by(d).for_each(|v| *v = c);
        u
    };
    let (u0, rhs, u1, d) = match get_problem(name, &Params::new())? {
        Problem::OneD(p) => {
            let s = Scheme1D::new(p, 24, 2, SchemeOptions::new(2))?;
            let u0 = constant(3, 24);
            let mut u1 = u0.clone();
            evolve(&s, &mut u1, 0.01, &cfl)?;
            (u0.clone(), s.rhs(&u0)?.0, u1, 3)
        }
        Problem::TwoD(p) => {
            let s = Scheme2D::new(p, 12, 12, 2, SchemeOptions::new(2))?;
            let u0 = constant(6, 144);
            let mut u1 = u0.clone();
            evolve(&s, &mut u1, 0.01, &cfl)?;
            (u0.clone(), s.rhs(&u0, 0.0)?.0, u1, 6)
        }
    };
    debug_assert_eq!(u0.len() % d, 0);
    let drift = u0.iter().zip(&u1).map(|(a, b)| (a - b).abs());
    Ok(rhs.iter().map(|v| v.abs()).chain(drift).fold(0.0, f64::max))
}

fn properties(ledger: &Ledger) -> mppdg::Result<Outcome> {
    let mut o = Outcome::new();

    let worst = ledger.periodic.iter().max_by(|a, b| a.1.total_cmp(&b.1));
    let (label, drift) = worst.map_or(("none", 0.0), |(l, d)| (l.as_str(), *d));
    o.check(
        drift <= MASS_TOL && !ledger.periodic.is_empty(),
        format!("mass drift <= {drift:.1e} over {} periodic runs (worst {label})", ledger.periodic.len()),
    );

    let mut oracle_failures = Vec::new();
    for seed in 0..ORACLE_SEEDS {
        if let Err(e) = common::check_1d(&common::instance_1d(seed)) {
            oracle_failures.push(format!("1D seed {seed}: {e}"));
        }
        if let Err(e) = common::check_2d(&common::instance_2d(seed)) {
            oracle_failures.push(format!("2D seed {seed}: {e}"));
        }
    }
    o.check(
        oracle_failures.is_empty(),
        format!(
            "oracle, theta and bounds on {ORACLE_SEEDS} 1D + {ORACLE_SEEDS} 2D instances{}",
            oracle_failures.first().map_or(String::new(), |f| format!(": {f}"))
        ),
    );

    let bad_theta: Vec<&String> = ledger.limited.iter().filter(|r| !(0.0..=1.0).contains(&r.1)).map(|r| &r.0).collect();
    o.check(
        bad_theta.is_empty(),
        format!("theta in [0, 1] on {} limited runs {bad_theta:?}", ledger.limited.len()),
    );
    let escaped: Vec<&String> = ledger
        .limited
        .iter()
        .filter(|r| r.2 < r.4.lower - BOUND_TOL || r.3 > r.4.upper + BOUND_TOL)
        .map(|r| &r.0)
        .collect();
    o.check(escaped.is_empty(), format!("limited runs inside their bounds {escaped:?}"));

    let cases = [
        ("linear-1d", 0.37),
        ("jiangshu-advection", 0.37),
        ("porous-medium", 0.0),
        ("linear-2d", 0.37),
        ("porous-medium-2d", 0.37),
        ("buckley-leverett-2d", 0.37),
        ("rigid-rotation", 0.0),
        ("ns-accuracy", 0.0),
        ("vortex-patch", 0.0),
    ];
    let mut worst = (0.0, "");
    for (name, c) in cases {
        let d = constant_state_defect(name, c)?;
        if d >= worst.0 {
            worst = (d, name);
        }
    }
    o.check(worst.0 <= STEADY_TOL, format!("constant states steady to {:.1e} ({})", worst.0, worst.1));

    let mut u = vec![1.0];
    evolve(&Decay, &mut u, 1.0, &CflConfig::for_degree(1))?;
    let z: f64 = 0.1;
    let expect = (1.0 - z + z * z / 2.0 - z * z * z / 6.0).powi(10);
    let err = (u[0] - expect).abs();
    o.check(err <= RK3_TOL, format!("RK3 decay {:.16} off by {err:.1e}", u[0]));
    Ok(o)
}

type Criterion = fn(&mut Ledger) -> mppdg::Result<Outcome>;

fn main() -> ExitCode {
    if let Err(e) = init_threads() {
        eprintln!("{e}");
        return ExitCode::FAILURE;
    }
    let criteria: [(&str, Criterion); 8] = [
        ("smooth 1D accuracy", table_1),
        ("porous medium positivity", table_2),
        ("Buckley-Leverett 1D positivity", table_3),
        ("smooth 2D accuracy", table_4),
        ("Buckley-Leverett 2D bounds", table_5),
        ("rotation and swirl bounds", tables_6_7),
        ("incompressible accuracy", table_8),
        ("vortex patch bounds", table_9),
    ];
    let mut ledger = Ledger::default();
    let mut failed = 0;
    let mut report = |name: &str, result: mppdg::Result<Outcome>, secs: f64| {
        let (ok, detail) = match result {
            Ok(o) => (o.passed(), o.summary()),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!("{} {name} ({secs:.0} s): {detail}", if ok { "PASS" } else { "FAIL" });
    };
    for (name, run) in criteria {
        let clock = Instant::now();
        let result = run(&mut ledger);
        report(name, result, clock.elapsed().as_secs_f64());
    }
    let clock = Instant::now();
    let result = properties(&ledger);
    report("property suites", result, clock.elapsed().as_secs_f64());
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
