use crate::basis::{legendre_all, Basis2D};
use crate::field::{DGField1D, DGField2D};
use crate::mesh::{Grid1D, Grid2D};

/// `sign(a) min(|a|, |b|, |c|)` when all three share a sign, else 0.
pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

#[inline]
fn tvb_minmod(a: f64, b: f64, c: f64, threshold: f64) -> f64 {
    if a.abs() <= threshold {
        a
    } else {
        minmod(a, b, c)
    }
}

/// TVB limiter on raw 1D coefficients (`dim` modes per cell), in place.
pub fn tvb_limit_1d(u: &mut [f64], dim: usize, grid: &Grid1D, m: f64) {
    if dim < 2 {
        return;
    }
    let n = grid.n;
    let threshold = m * grid.h * grid.h;
    let ubar: Vec<f64> = u.iter().step_by(dim).copied().collect();
    let ghost = |right: bool| grid.boundary.ghost(right);
    for j in 0..n {
        let left = if j > 0 { ubar[j - 1] } else { ghost(false).unwrap_or(ubar[n - 1]) };
        let right = if j + 1 < n { ubar[j + 1] } else { ghost(true).unwrap_or(ubar[0]) };
        let c = &mut u[j * dim..(j + 1) * dim];
        let at_right: f64 = c.iter().sum();
        let at_left: f64 = c.iter().enumerate().map(|(m, v)| if m % 2 == 0 { *v } else { -v }).sum();
        let (fwd, bwd) = (right - ubar[j], ubar[j] - left);
        let tilde = at_right - ubar[j];
        let tilde2 = ubar[j] - at_left;
        let t1 = tvb_minmod(tilde, fwd, bwd, threshold);
        let t2 = tvb_minmod(tilde2, fwd, bwd, threshold);
        if t1 != tilde || t2 != tilde2 {
            c[1] = 0.5 * (t1 + t2);
            for v in c[2..].iter_mut() {
                *v = 0.0;
            }
        }
    }
}

pub fn tvb_limiter_1d(field: &DGField1D, m: f64) -> DGField1D {
    let mut out = field.clone();
    tvb_limit_1d(&mut out.coeffs, field.dim(), &field.grid, m);
    out
}

/// Mode values at the four edge midpoints `[east, west, north, south]`.
fn midpoint_tables(basis: &Basis2D) -> [Vec<f64>; 4] {
    let (p1, _, _) = legendre_all(basis.k, 1.0);
    let (pm, _, _) = legendre_all(basis.k, -1.0);
    let (p0, _, _) = legendre_all(basis.k, 0.0);
    let table = |px: &[f64], py: &[f64]| basis.modes.iter().map(|&(a, b)| px[a] * py[b]).collect();
    [table(&p1, &p0), table(&pm, &p0), table(&p0, &p1), table(&p0, &pm)]
}

/// TVB limiter applied direction by direction on raw 2D coefficients, in place.
pub fn tvb_limit_2d(u: &mut [f64], basis: &Basis2D, grid: &Grid2D, m: f64) {
    let dim = basis.dim();
    if dim < 3 {
        return;
    }
    let (nx, ny) = (grid.nx(), grid.ny());
    let (tx, ty) = (m * grid.hx() * grid.hx(), m * grid.hy() * grid.hy());
    let [east, west, north, south] = midpoint_tables(basis);
    let ix = basis.mode_index(1, 0).unwrap();
    let iy = basis.mode_index(0, 1).unwrap();
    let ubar: Vec<f64> = u.iter().step_by(dim).copied().collect();
    let periodic = grid.is_periodic();
    let nb = |i: isize, j: isize| -> f64 {
        if (0..nx as isize).contains(&i) && (0..ny as isize).contains(&j) {
            ubar[j as usize * nx + i as usize]
        } else if periodic {
            let (i, j) = (i.rem_euclid(nx as isize) as usize, j.rem_euclid(ny as isize) as usize);
            ubar[j * nx + i]
        } else {
            let b = grid.x.boundary;
            b.ghost(i >= nx as isize || j >= ny as isize).unwrap()
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for j in 0..ny {
        for i in 0..nx {
            let c = j * nx + i;
            let mean = ubar[c];
            let (ii, jj) = (i as isize, j as isize);
            let cell = &mut u[c * dim..(c + 1) * dim];
            let ex = dot(cell, &east) - mean;
            let wx = mean - dot(cell, &west);
            let ny_ = dot(cell, &north) - mean;
            let sy = mean - dot(cell, &south);
            let (fx, bx) = (nb(ii + 1, jj) - mean, mean - nb(ii - 1, jj));
            let (fy, by) = (nb(ii, jj + 1) - mean, mean - nb(ii, jj - 1));
            let ex2 = tvb_minmod(ex, fx, bx, tx);
            let wx2 = tvb_minmod(wx, fx, bx, tx);
            let ny2 = tvb_minmod(ny_, fy, by, ty);
            let sy2 = tvb_minmod(sy, fy, by, ty);
            if ex2 != ex || wx2 != wx || ny2 != ny_ || sy2 != sy {
                for v in cell[1..].iter_mut() {
                    *v = 0.0;
                }
                cell[ix] = 0.5 * (ex2 + wx2);
                cell[iy] = 0.5 * (ny2 + sy2);
            }
        }
    }
}

pub fn tvb_limiter_2d(field: &DGField2D, m: f64) -> DGField2D {
    let mut out = field.clone();
    let basis = Basis2D::new(field.k).expect("field degree is supported");
    tvb_limit_2d(&mut out.coeffs, &basis, &field.grid, m);
    out
}
