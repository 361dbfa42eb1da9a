//! Bound-preserving flux limiting of cell averages and the TVB moment limiter.

mod mpp1d;
mod mpp2d;
mod tvb;

use serde::{Deserialize, Serialize};

pub use mpp1d::{apply_mpp_limiter_1d, compute_gamma_1d, limiter_bounds_1d};
pub use mpp2d::{apply_mpp_limiter_2d, compute_gamma_2d, limiter_bounds_2d};
pub use tvb::{minmod, tvb_limit_1d, tvb_limit_2d, tvb_limiter_1d, tvb_limiter_2d};

/// Slack on bound checks; `Gamma` values within this of the wrong sign are clamped.
pub const BOUND_TOLERANCE: f64 = 1e-12;

/// Distance of the first-order update from the bounds:
/// `max[c] = u_M - u_low`, `min[c] = u_m - u_low`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GammaPair {
    pub max: Vec<f64>,
    pub min: Vec<f64>,
}

/// Per-cell limiting factors, ordered `[left, right, down, up]`; unused directions are 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellLimits {
    pub upper: [f64; 4],
    pub lower: [f64; 4],
}

impl Default for CellLimits {
    fn default() -> Self {
        Self {
            upper: [1.0; 4],
            lower: [1.0; 4],
        }
    }
}

/// Outcome of one application of the MPP flux limiter.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LimiterReport {
    /// Interface parameters in [`FluxRecord`](crate::FluxRecord) layout.
    pub theta_x: Vec<f64>,
    pub theta_y: Vec<f64>,
    pub cells: Vec<CellLimits>,
    /// Distinct interfaces with `theta < 1`.
    pub activated: usize,
}

impl LimiterReport {
    pub fn min_theta(&self) -> f64 {
        self.theta_x.iter().chain(&self.theta_y).copied().fold(1.0, f64::min)
    }
}

/// Scaling that a group of contributions `(a, b, ...)` (positive entries push toward
/// the bound) receives so their sum stays within `gamma >= 0`.
pub(crate) fn share<const N: usize>(gamma: f64, contributions: [f64; N]) -> [f64; N] {
    let total: f64 = contributions.iter().map(|c| c.max(0.0)).sum();
    if total <= gamma {
        return [1.0; N];
    }
    assert!(total > 0.0);
    let s = if gamma > 0.0 { (gamma / total).min(1.0) } else { 0.0 };
    contributions.map(|c| if c > 0.0 { s } else { 1.0 })
}

/// Clamps a `Gamma` value with a tiny wrong sign, or reports the violation.
pub(crate) fn checked_gamma(cell: usize, gmax: f64, gmin: f64) -> crate::Result<(f64, f64)> {
    if gmax < -BOUND_TOLERANCE || gmin > BOUND_TOLERANCE || !gmax.is_finite() || !gmin.is_finite() {
        return Err(crate::Error::CflViolation {
            cell,
            gamma_max: gmax,
            gamma_min: gmin,
        });
    }
    Ok((gmax.max(0.0), gmin.min(0.0)))
}

/// `theta (high - low) + low`, returning `high` itself when `theta == 1`.
#[inline]
pub(crate) fn blend(theta: f64, high: f64, low: f64) -> f64 {
    if theta == 1.0 {
        high
    } else {
        theta * (high - low) + low
    }
}
