use super::{blend, checked_gamma, share, CellLimits, GammaPair, LimiterReport};
use crate::error::Result;
use crate::operator::FluxRecord;
use crate::problem::BoundPair;

/// Edge indices of cell `(i, j)`: `(west, east)` into `x`, `(south, north)` into `y`.
#[inline]
fn edges(i: usize, j: usize, nx: usize) -> (usize, usize, usize, usize) {
    (j * (nx + 1) + i, j * (nx + 1) + i + 1, j * nx + i, (j + 1) * nx + i)
}

pub fn compute_gamma_2d(
    ubar: &[f64],
    low: &FluxRecord,
    bounds: BoundPair,
    (lx, ly): (f64, f64),
    (nx, ny): (usize, usize),
) -> Result<GammaPair> {
    assert_eq!(ubar.len(), nx * ny);
    let mut g = GammaPair {
        max: Vec::with_capacity(nx * ny),
        min: Vec::with_capacity(nx * ny),
    };
    for c in 0..nx * ny {
        let (w, e, s, n) = edges(c % nx, c / nx, nx);
        let u_low = ubar[c] - lx * (low.x[e] - low.x[w]) - ly * (low.y[n] - low.y[s]);
        let (gmax, gmin) = checked_gamma(c, bounds.upper - u_low, bounds.lower - u_low)?;
        g.max.push(gmax);
        g.min.push(gmin);
    }
    Ok(g)
}

/// Limits for one cell from the signed contributions `[left, right, down, up]` of the
/// antidiffusive fluxes to its update, i.e. `u = u_low + sum theta_d f_d`.
/// Contributions pushing toward a bound share the room to it equally.
pub fn limiter_bounds_2d(f: [f64; 4], gamma_max: f64, gamma_min: f64) -> CellLimits {
    CellLimits {
        upper: share(gamma_max, f),
        lower: share(-gamma_min, f.map(|v| -v)),
    }
}

pub fn apply_mpp_limiter_2d(
    high: &FluxRecord,
    low: &FluxRecord,
    ubar: &[f64],
    bounds: BoundPair,
    (lx, ly): (f64, f64),
    (nx, ny): (usize, usize),
    periodic: bool,
) -> Result<(FluxRecord, LimiterReport)> {
    let gamma = compute_gamma_2d(ubar, low, bounds, (lx, ly), (nx, ny))?;
    let cells: Vec<CellLimits> = (0..nx * ny)
        .map(|c| {
            let (w, e, s, n) = edges(c % nx, c / nx, nx);
            let f = [
                lx * (high.x[w] - low.x[w]),
                -lx * (high.x[e] - low.x[e]),
                ly * (high.y[s] - low.y[s]),
                -ly * (high.y[n] - low.y[n]),
            ];
            limiter_bounds_2d(f, gamma.max[c], gamma.min[c])
        })
        .collect();
    let dir = |c: usize, d: usize| cells[c].upper[d].min(cells[c].lower[d]);
    let (left, right, down, up) = (0, 1, 2, 3);

    let mut theta_x = vec![1.0; (nx + 1) * ny];
    for j in 0..ny {
        for i in 0..=nx {
            let from_left = (i > 0).then(|| j * nx + i - 1).or((periodic).then(|| j * nx + nx - 1));
            let from_right = (i < nx).then(|| j * nx + i).or((periodic).then(|| j * nx));
            let mut t: f64 = 1.0;
            if let Some(c) = from_left {
                t = t.min(dir(c, right));
            }
            if let Some(c) = from_right {
                t = t.min(dir(c, left));
            }
            theta_x[j * (nx + 1) + i] = t;
        }
    }
    let mut theta_y = vec![1.0; nx * (ny + 1)];
    for j in 0..=ny {
        for i in 0..nx {
            let below = (j > 0).then(|| (j - 1) * nx + i).or((periodic).then(|| (ny - 1) * nx + i));
            let above = (j < ny).then(|| j * nx + i).or((periodic).then_some(i));
            let mut t: f64 = 1.0;
            if let Some(c) = below {
                t = t.min(dir(c, up));
            }
            if let Some(c) = above {
                t = t.min(dir(c, down));
            }
            theta_y[j * nx + i] = t;
        }
    }
    let limited = FluxRecord {
        x: theta_x.iter().zip(high.x.iter().zip(&low.x)).map(|(&t, (&h, &l))| blend(t, h, l)).collect(),
        y: theta_y.iter().zip(high.y.iter().zip(&low.y)).map(|(&t, (&h, &l))| blend(t, h, l)).collect(),
    };
    let activated = if periodic {
        (0..ny).flat_map(|j| (0..nx).map(move |i| j * (nx + 1) + i)).filter(|&e| theta_x[e] < 1.0).count()
            + theta_y[..nx * ny].iter().filter(|&&t| t < 1.0).count()
    } else {
        theta_x.iter().chain(&theta_y).filter(|&&t| t < 1.0).count()
    };
    Ok((
        limited,
        LimiterReport {
            theta_x,
            theta_y,
            cells,
            activated,
        },
    ))
}
