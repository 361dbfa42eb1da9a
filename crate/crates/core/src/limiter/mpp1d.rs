use super::{blend, checked_gamma, share, CellLimits, GammaPair, LimiterReport};
use crate::error::Result;
use crate::operator::FluxRecord;
use crate::problem::BoundPair;

/// `Gamma` for every cell from the first-order fluxes `low.x` (length `n + 1`).
pub fn compute_gamma_1d(ubar: &[f64], low: &FluxRecord, bounds: BoundPair, lambda: f64) -> Result<GammaPair> {
    let n = ubar.len();
    assert_eq!(low.x.len(), n + 1);
    let mut g = GammaPair {
        max: Vec::with_capacity(n),
        min: Vec::with_capacity(n),
    };
    for j in 0..n {
        let u_low = ubar[j] - lambda * (low.x[j + 1] - low.x[j]);
        let (gmax, gmin) = checked_gamma(j, bounds.upper - u_low, bounds.lower - u_low)?;
        g.max.push(gmax);
        g.min.push(gmin);
    }
    Ok(g)
}

/// `(upper_minus, upper_plus, lower_minus, lower_plus)` for one cell, where
/// `f_minus = lambda F_{j-1/2}` and `f_plus = lambda F_{j+1/2}` are the scaled
/// antidiffusive fluxes and the limited update is
/// `u_low + theta_- f_minus - theta_+ f_plus`.
pub fn limiter_bounds_1d(f_minus: f64, f_plus: f64, gamma_max: f64, gamma_min: f64) -> (f64, f64, f64, f64) {
    let [um, up] = share(gamma_max, [f_minus, -f_plus]);
    let [lm, lp] = share(-gamma_min, [-f_minus, f_plus]);
    (um, up, lm, lp)
}

/// Limits the RK-combined fluxes `high` toward `low` so that
/// `ubar - lambda (H_{j+1/2} - H_{j-1/2})` stays within `bounds`.
pub fn apply_mpp_limiter_1d(
    high: &FluxRecord,
    low: &FluxRecord,
    ubar: &[f64],
    bounds: BoundPair,
    lambda: f64,
    periodic: bool,
) -> Result<(FluxRecord, LimiterReport)> {
    let n = ubar.len();
    assert_eq!(high.x.len(), n + 1);
    let gamma = compute_gamma_1d(ubar, low, bounds, lambda)?;
    let anti: Vec<f64> = high.x.iter().zip(&low.x).map(|(h, l)| lambda * (h - l)).collect();
    let cells: Vec<CellLimits> = (0..n)
        .map(|j| {
            let (um, up, lm, lp) = limiter_bounds_1d(anti[j], anti[j + 1], gamma.max[j], gamma.min[j]);
            CellLimits {
                upper: [um, up, 1.0, 1.0],
                lower: [lm, lp, 1.0, 1.0],
            }
        })
        .collect();
    let right_of = |j: usize| cells[j].upper[1].min(cells[j].lower[1]);
    let left_of = |j: usize| cells[j].upper[0].min(cells[j].lower[0]);
    let mut theta = vec![1.0; n + 1];
    for (i, t) in theta.iter_mut().enumerate().take(n).skip(1) {
        *t = right_of(i - 1).min(left_of(i));
    }
    if periodic {
        theta[0] = right_of(n - 1).min(left_of(0));
        theta[n] = theta[0];
    } else {
        theta[0] = left_of(0);
        theta[n] = right_of(n - 1);
    }
    let limited = FluxRecord {
        x: (0..=n).map(|i| blend(theta[i], high.x[i], low.x[i])).collect(),
        y: Vec::new(),
    };
    let distinct = if periodic { n } else { n + 1 };
    let activated = theta[..distinct].iter().filter(|&&t| t < 1.0).count();
    Ok((
        limited,
        LimiterReport {
            theta_x: theta,
            theta_y: Vec::new(),
            cells,
            activated,
        },
    ))
}
