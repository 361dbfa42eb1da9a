//! Third-order SSP Runge-Kutta stepping with final-stage flux limiting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limiter::LimiterReport;
use crate::operator::FluxRecord;
use crate::problem::BoundPair;

/// Relative distance to the final time below which a step is stretched to land on it.
const LANDING_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CflConfig {
    /// Convective CFL number.
    pub cflc: f64,
    /// Diffusive CFL number.
    pub cfld: f64,
    /// Use `h^(4/3)` in the convective bound when `k = 3`.
    pub p3_time_scaling: bool,
}

impl CflConfig {
    pub fn for_degree(k: usize) -> Self {
        let (cflc, cfld) = match k {
            0 | 1 => (0.3, 0.06),
            2 => (0.18, 0.01),
            _ => (0.1, 0.005),
        };
        Self {
            cflc,
            cfld,
            p3_time_scaling: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cflc > 0.0 && self.cfld > 0.0 && self.cflc.is_finite() && self.cfld.is_finite()) {
            return Err(Error::invalid(format!(
                "CFL numbers must be positive, got cflc = {}, cfld = {}",
                self.cflc, self.cfld
            )));
        }
        Ok(())
    }

    fn convective_length(&self, h: f64, k: usize) -> f64 {
        if self.p3_time_scaling && k == 3 {
            h.powf(4.0 / 3.0)
        } else {
            h
        }
    }

    /// `min(CFLC h / max|f'|, CFLD h^2 / max|a'|)`, dropping absent terms.
    pub fn dt_1d(&self, h: f64, k: usize, max_f: f64, max_a: f64) -> Result<f64> {
        let conv = (max_f > 0.0).then(|| self.cflc * self.convective_length(h, k) / max_f);
        let diff = (max_a > 0.0).then(|| self.cfld * h * h / max_a);
        pick(conv, diff)
    }

    /// `min(CFLC / (ax / hx + ay / hy), (CFLD / L) / (1 / hx^2 + 1 / hy^2))`.
    pub fn dt_2d(&self, hx: f64, hy: f64, k: usize, ax: f64, ay: f64, lambda: f64) -> Result<f64> {
        let (lx, ly) = (self.convective_length(hx, k), self.convective_length(hy, k));
        let speed = ax / lx + ay / ly;
        let conv = (speed > 0.0).then(|| self.cflc / speed);
        let diff = (lambda > 0.0).then(|| self.cfld / lambda / (1.0 / (hx * hx) + 1.0 / (hy * hy)));
        pick(conv, diff)
    }
}

fn pick(conv: Option<f64>, diff: Option<f64>) -> Result<f64> {
    match (conv, diff) {
        (Some(a), Some(b)) => Ok(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => Err(Error::InvalidProblem(
            "no convection or diffusion to bound the time step".into(),
        )),
    }
}

/// A semi-discrete scheme `du/dt = L(u)` over all DG coefficients, stored cell by
/// cell with `modes()` coefficients each and the average first.
pub trait Discretization: Sync {
    fn modes(&self) -> usize;
    fn bounds(&self) -> BoundPair;
    fn cell_volume(&self) -> f64;
    fn is_periodic(&self) -> bool;
    fn rhs(&self, u: &[f64], t: f64) -> Result<(Vec<f64>, FluxRecord)>;
    fn stable_dt(&self, u: &[f64], t: f64, cfl: &CflConfig) -> Result<f64>;
    /// Moment limiter applied to every stage solution.
    fn limit_stage(&self, u: &mut [f64]);
    fn mpp_enabled(&self) -> bool;
    /// Bound-preserving averages at `t + dt` from `u_n` and the RK-combined fluxes.
    fn limit_averages(&self, u_n: &[f64], t: f64, dt: f64, high: &FluxRecord)
        -> Result<(Vec<f64>, LimiterReport)>;
}

/// Running `1/6 H^n + 1/6 H^(1) + 2/3 H^(2)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StageFluxAccumulator {
    sum: Option<FluxRecord>,
    stages: usize,
}

impl StageFluxAccumulator {
    pub const WEIGHTS: [f64; 3] = [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0];

    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the flux of the next stage (`u^n`, `u^(1)`, `u^(2)` in that order).
    pub fn push(&mut self, stage: &FluxRecord) {
        assert!(self.stages < 3, "only three stages");
        let w = Self::WEIGHTS[self.stages];
        let sum = self.sum.get_or_insert_with(|| stage.zeros_like());
        sum.add_scaled(w, stage);
        self.stages += 1;
    }

    pub fn is_complete(&self) -> bool {
        self.stages == 3
    }

    pub fn finish(self) -> FluxRecord {
        assert!(self.is_complete(), "accumulator has {} of 3 stages", self.stages);
        self.sum.unwrap()
    }
}

fn combine(base: &[f64], dt: f64, terms: &[(f64, &[f64])]) -> Vec<f64> {
    let mut out = base.to_vec();
    for (w, l) in terms {
        for (o, v) in out.iter_mut().zip(l.iter()) {
            *o += dt * w * v;
        }
    }
    out
}

fn check_finite(u: &[f64], step: usize) -> Result<()> {
    match u.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::numerical(format!("step {step}"), format!("non-finite coefficient {i}"))),
        None => Ok(()),
    }
}

/// Advances `u` from `t` to `t + dt`, returning the limiter report if MPP is on.
pub fn ssprk3_step<D: Discretization + ?Sized>(
    scheme: &D,
    u: &[f64],
    t: f64,
    dt: f64,
    step: usize,
) -> Result<(Vec<f64>, Option<LimiterReport>)> {
    let tag = |e: Error| match e {
        Error::NumericalFailure { location, detail } => Error::NumericalFailure {
            location: format!("step {step}, {location}"),
            detail,
        },
        other => other,
    };
    let mut acc = StageFluxAccumulator::new();
    let (l0, h0) = scheme.rhs(u, t).map_err(tag)?;
    acc.push(&h0);
    let mut u1 = combine(u, dt, &[(1.0, &l0)]);
    scheme.limit_stage(&mut u1);
    check_finite(&u1, step)?;

    let (l1, h1) = scheme.rhs(&u1, t + dt).map_err(tag)?;
    acc.push(&h1);
    let mut u2 = combine(u, dt, &[(0.25, &l0), (0.25, &l1)]);
    scheme.limit_stage(&mut u2);
    check_finite(&u2, step)?;

    let (l2, h2) = scheme.rhs(&u2, t + 0.5 * dt).map_err(tag)?;
    acc.push(&h2);
    let mut next = combine(u, dt, &[(1.0 / 6.0, &l0), (2.0 / 3.0, &l2), (1.0 / 6.0, &l1)]);
    let report = if scheme.mpp_enabled() {
        let (avg, report) = scheme.limit_averages(u, t, dt, &acc.finish())?;
        let d = scheme.modes();
        for (j, a) in avg.into_iter().enumerate() {
            next[j * d] = a;
        }
        Some(report)
    } else {
        None
    };
    scheme.limit_stage(&mut next);
    check_finite(&next, step)?;
    Ok((next, report))
}

/// Summary of a run from `evolve`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub steps: usize,
    pub final_time: f64,
    /// Extremes of the cell averages over every step, including the initial data.
    pub global_min: f64,
    pub global_max: f64,
    pub final_min: f64,
    pub final_max: f64,
    /// Interfaces limited (`theta < 1`) summed over all steps.
    pub limiter_activations: usize,
    /// Steps in which at least one interface was limited.
    pub limited_steps: usize,
    pub min_theta: f64,
    pub initial_mass: f64,
    pub final_mass: f64,
    /// Sum of `|average| * volume` of the initial data.
    pub initial_abs_mass: f64,
}

impl RunStats {
    /// Mass drift relative to [`RunStats::initial_abs_mass`], which stays meaningful
    /// for zero-mean data.
    pub fn relative_mass_change(&self) -> f64 {
        let scale = self.initial_abs_mass.max(f64::MIN_POSITIVE);
        (self.final_mass - self.initial_mass).abs() / scale
    }
}

fn extremes(u: &[f64], d: usize) -> (f64, f64) {
    u.iter()
        .step_by(d)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

fn mass(u: &[f64], d: usize, volume: f64) -> f64 {
    u.iter().step_by(d).sum::<f64>() * volume
}

/// Advances `u` in place from `t = 0` to `final_time`, landing on it exactly.
pub fn evolve<D: Discretization + ?Sized>(
    scheme: &D,
    u: &mut Vec<f64>,
    final_time: f64,
    cfl: &CflConfig,
) -> Result<RunStats> {
    evolve_with(scheme, u, final_time, cfl, |_, _, _| {})
}

/// As [`evolve`], calling `observe(step, t, u)` after every step.
pub fn evolve_with<D: Discretization + ?Sized>(
    scheme: &D,
    u: &mut Vec<f64>,
    final_time: f64,
    cfl: &CflConfig,
    mut observe: impl FnMut(usize, f64, &[f64]),
) -> Result<RunStats> {
    if !(final_time >= 0.0) {
        return Err(Error::invalid(format!("final time must be non-negative, got {final_time}")));
    }
    cfl.validate()?;
    let d = scheme.modes();
    let (lo, hi) = extremes(u, d);
    let mut stats = RunStats {
        global_min: lo,
        global_max: hi,
        min_theta: 1.0,
        initial_mass: mass(u, d, scheme.cell_volume()),
        initial_abs_mass: u.iter().step_by(d).map(|v| v.abs()).sum::<f64>() * scheme.cell_volume(),
        ..Default::default()
    };
    let mut t = 0.0;
    while t < final_time {
        let mut dt = scheme.stable_dt(u, t, cfl)?;
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::numerical(format!("step {}", stats.steps), format!("time step {dt}")));
        }
        let landing = t + dt >= final_time * (1.0 - LANDING_TOLERANCE);
        if landing {
            dt = final_time - t;
        }
        let (next, report) = ssprk3_step(scheme, u, t, dt, stats.steps)?;
        *u = next;
        t = if landing { final_time } else { t + dt };
        stats.steps += 1;
        if let Some(r) = report {
            stats.limiter_activations += r.activated;
            stats.limited_steps += usize::from(r.activated > 0);
            stats.min_theta = stats.min_theta.min(r.min_theta());
        }
        let (lo, hi) = extremes(u, d);
        stats.global_min = stats.global_min.min(lo);
        stats.global_max = stats.global_max.max(hi);
        observe(stats.steps, t, u);
    }
    let (lo, hi) = extremes(u, d);
    stats.final_min = lo;
    stats.final_max = hi;
    stats.final_time = t;
    stats.final_mass = mass(u, d, scheme.cell_volume());
    Ok(stats)
}
