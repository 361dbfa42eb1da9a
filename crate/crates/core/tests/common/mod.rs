//! Brute-force oracle for the flux limiter and random instances to feed it.

#![allow(dead_code)]

use mppdg::limiter::{apply_mpp_limiter_1d, apply_mpp_limiter_2d, LimiterReport};
use mppdg::{BoundPair, FluxRecord};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Resolution of the brute-force scan over the scaling factor.
pub const STEPS: usize = 400;

/// Largest `s` on the grid `i / STEPS` such that scaling every contribution that
/// pushes toward a bound by `s` keeps the cell inside `[lo, hi]` when the
/// contributions pushing the other way are ignored.
pub fn scan(u_low: f64, contributions: &[f64], lo: f64, hi: f64) -> (f64, f64) {
    let up: f64 = contributions.iter().filter(|&&c| c > 0.0).sum();
    let down: f64 = contributions.iter().filter(|&&c| c < 0.0).sum();
    let mut s_up = 0.0;
    let mut s_down = 0.0;
    for i in 0..=STEPS {
        let s = i as f64 / STEPS as f64;
        if u_low + s * up <= hi {
            s_up = s;
        }
        if u_low + s * down >= lo {
            s_down = s;
        }
    }
    (s_up, s_down)
}

/// Oracle limit of each contribution of one cell.
pub fn oracle_cell(u_low: f64, contributions: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let (s_up, s_down) = scan(u_low, contributions, lo, hi);
    contributions
        .iter()
        .map(|&c| if c > 0.0 { s_up } else if c < 0.0 { s_down } else { 1.0 })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Instance1D {
    pub ubar: Vec<f64>,
    pub low: FluxRecord,
    pub high: FluxRecord,
    pub lambda: f64,
    pub periodic: bool,
    pub bounds: BoundPair,
}

#[derive(Debug, Clone)]
pub struct Instance2D {
    pub ubar: Vec<f64>,
    pub low: FluxRecord,
    pub high: FluxRecord,
    pub lambda: (f64, f64),
    pub dims: (usize, usize),
    pub bounds: BoundPair,
}

/// Up to six cells with averages in `[0, 1]` (some pinned to a bound), first-order
/// LF fluxes for `f = a u` under a CFL that keeps the first-order update monotone,
/// and arbitrary high-order fluxes. Non-periodic instances use ghost values 0 and 1.
pub fn instance_1d(seed: u64) -> Instance1D {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = rng.gen_range(1..=6);
    let ubar: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.gen_range(0.0..=1.0);
            if rng.gen_bool(0.3) { u.round() } else { u }
        })
        .collect();
    let a: f64 = rng.gen_range(-1.0..=1.0);
    let lambda = rng.gen_range(0.05..=0.5);
    let periodic = rng.gen_bool(0.5);
    let ghost = |i: isize| -> f64 {
        if periodic {
            ubar[i.rem_euclid(n as isize) as usize]
        } else if i < 0 {
            0.0
        } else if i >= n as isize {
            1.0
        } else {
            ubar[i as usize]
        }
    };
    let lf = |l: f64, r: f64| 0.5 * (a * l + a * r) - 0.5 * (r - l);
    let mut low: Vec<f64> = (0..=n as isize).map(|i| lf(ghost(i - 1), ghost(i))).collect();
    let mut high: Vec<f64> = low.iter().map(|h| h + rng.gen_range(-0.6..0.6)).collect();
    if periodic {
        high[n] = high[0];
        low[n] = low[0];
    }
    Instance1D {
        ubar,
        low: FluxRecord { x: low, y: Vec::new() },
        high: FluxRecord { x: high, y: Vec::new() },
        lambda,
        periodic,
        bounds: BoundPair::new(0.0, 1.0),
    }
}

/// Periodic instances up to 4 x 4 with first-order upwind fluxes for a constant velocity.
pub fn instance_2d(seed: u64) -> Instance2D {
    let mut rng = StdRng::seed_from_u64(seed);
    let (nx, ny) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let ubar: Vec<f64> = (0..nx * ny).map(|_| rng.gen_range(0.0..=1.0)).collect();
    let (a, b): (f64, f64) = (rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
    let lambda = (rng.gen_range(0.05..=0.25), rng.gen_range(0.05..=0.25));
    let at = |i: isize, j: isize| ubar[(j.rem_euclid(ny as isize) * nx as isize + i.rem_euclid(nx as isize)) as usize];
    let up = |v: f64, l: f64, r: f64| if v >= 0.0 { v * l } else { v * r };
    let mut lx = vec![0.0; (nx + 1) * ny];
    for j in 0..ny as isize {
        for i in 0..=nx as isize {
            lx[j as usize * (nx + 1) + i as usize] = up(a, at(i - 1, j), at(i, j));
        }
    }
    let mut ly = vec![0.0; nx * (ny + 1)];
    for j in 0..=ny as isize {
        for i in 0..nx as isize {
            ly[j as usize * nx + i as usize] = up(b, at(i, j - 1), at(i, j));
        }
    }
    let mut hx: Vec<f64> = lx.iter().map(|l| l + rng.gen_range(-0.4..0.4)).collect();
    let mut hy: Vec<f64> = ly.iter().map(|l| l + rng.gen_range(-0.4..0.4)).collect();
    for j in 0..ny {
        hx[j * (nx + 1) + nx] = hx[j * (nx + 1)];
    }
    for i in 0..nx {
        hy[ny * nx + i] = hy[i];
    }
    Instance2D {
        ubar,
        low: FluxRecord { x: lx, y: ly },
        high: FluxRecord { x: hx, y: hy },
        lambda,
        dims: (nx, ny),
        bounds: BoundPair::new(0.0, 1.0),
    }
}

pub fn limit_1d(inst: &Instance1D, bounds: BoundPair) -> (FluxRecord, LimiterReport) {
    apply_mpp_limiter_1d(&inst.high, &inst.low, &inst.ubar, bounds, inst.lambda, inst.periodic).unwrap()
}

pub fn oracle_theta_1d(inst: &Instance1D) -> Vec<f64> {
    let n = inst.ubar.len();
    let (lo, hi) = (inst.bounds.lower, inst.bounds.upper);
    let mut theta = vec![1.0f64; n + 1];
    for j in 0..n {
        let u_low = inst.ubar[j] - inst.lambda * (inst.low.x[j + 1] - inst.low.x[j]);
        let f_minus = inst.lambda * (inst.high.x[j] - inst.low.x[j]);
        let f_plus = inst.lambda * (inst.high.x[j + 1] - inst.low.x[j + 1]);
        let lim = oracle_cell(u_low, &[f_minus, -f_plus], lo, hi);
        theta[j] = theta[j].min(lim[0]);
        theta[j + 1] = theta[j + 1].min(lim[1]);
    }
    if inst.periodic {
        let t = theta[0].min(theta[n]);
        theta[0] = t;
        theta[n] = t;
    }
    theta
}

fn compare(theta: &[f64], oracle: &[f64]) -> Result<(), String> {
    for (i, (&t, &o)) in theta.iter().zip(oracle).enumerate() {
        if !(0.0..=1.0).contains(&t) {
            return Err(format!("theta[{i}] = {t} outside [0, 1]"));
        }
        if t < o - 1e-12 {
            return Err(format!("theta[{i}] = {t} below scan {o}"));
        }
        if t - o > 1.0 / STEPS as f64 + 1e-12 {
            return Err(format!("theta[{i}] = {t} far above scan {o}"));
        }
    }
    Ok(())
}

/// Limits the instance and compares against the scan: every factor in `[0, 1]`,
/// no smaller than the scan and at most one grid step larger, and the limited
/// update inside the bounds.
pub fn check_1d(inst: &Instance1D) -> Result<(), String> {
    let (limited, report) = limit_1d(inst, inst.bounds);
    compare(&report.theta_x, &oracle_theta_1d(inst))?;
    for j in 0..inst.ubar.len() {
        let u = inst.ubar[j] - inst.lambda * (limited.x[j + 1] - limited.x[j]);
        if !inst.bounds.contains(u, 1e-12) {
            return Err(format!("cell {j}: {u}"));
        }
    }
    Ok(())
}

/// As [`check_1d`] on a periodic 2D instance.
pub fn check_2d(inst: &Instance2D) -> Result<(), String> {
    let (nx, ny) = inst.dims;
    let (lx, ly) = inst.lambda;
    let (limited, report) =
        apply_mpp_limiter_2d(&inst.high, &inst.low, &inst.ubar, inst.bounds, inst.lambda, inst.dims, true)
            .map_err(|e| e.to_string())?;
    let faces = |j: usize, i: usize| (j * (nx + 1) + i, j * (nx + 1) + i + 1, j * nx + i, (j + 1) * nx + i);
    let mut ox = vec![1.0f64; (nx + 1) * ny];
    let mut oy = vec![1.0f64; nx * (ny + 1)];
    for j in 0..ny {
        for i in 0..nx {
            let (w, e, s, n) = faces(j, i);
            let u_low =
                inst.ubar[j * nx + i] - lx * (inst.low.x[e] - inst.low.x[w]) - ly * (inst.low.y[n] - inst.low.y[s]);
            let f = [
                lx * (inst.high.x[w] - inst.low.x[w]),
                -lx * (inst.high.x[e] - inst.low.x[e]),
                ly * (inst.high.y[s] - inst.low.y[s]),
                -ly * (inst.high.y[n] - inst.low.y[n]),
            ];
            let lim = oracle_cell(u_low, &f, inst.bounds.lower, inst.bounds.upper);
            ox[w] = ox[w].min(lim[0]);
            ox[e] = ox[e].min(lim[1]);
            oy[s] = oy[s].min(lim[2]);
            oy[n] = oy[n].min(lim[3]);
        }
    }
    for j in 0..ny {
        let t = ox[j * (nx + 1)].min(ox[j * (nx + 1) + nx]);
        ox[j * (nx + 1)] = t;
        ox[j * (nx + 1) + nx] = t;
    }
    for i in 0..nx {
        let t = oy[i].min(oy[ny * nx + i]);
        oy[i] = t;
        oy[ny * nx + i] = t;
    }
    compare(&report.theta_x, &ox)?;
    compare(&report.theta_y, &oy)?;
    for j in 0..ny {
        for i in 0..nx {
            let (w, e, s, n) = faces(j, i);
            let u = inst.ubar[j * nx + i] - lx * (limited.x[e] - limited.x[w]) - ly * (limited.y[n] - limited.y[s]);
            if !inst.bounds.contains(u, 1e-12) {
                return Err(format!("cell ({i}, {j}): {u}"));
            }
        }
    }
    Ok(())
}
