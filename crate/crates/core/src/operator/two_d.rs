use std::sync::Mutex;

use rayon::prelude::*;

use super::velocity::{prescribed_vertex_stream, sample_prescribed};
use super::{EdgeMeans, FluxRecord, SchemeOptions, VelocitySamples};
use crate::basis::{dot, Basis2D};
use crate::error::{Error, Result};
use crate::field::DGField2D;
use crate::flux::{convective_flux, DiffusiveFluxConfig};
use crate::incompressible::StreamSolver;
use crate::limiter::{apply_mpp_limiter_2d, tvb_limit_2d, LimiterReport};
use crate::mesh::{Grid1D, Grid2D};
use crate::problem::{BoundPair, Convection2D, Problem2D};
use crate::time::{CflConfig, Discretization};

/// Direct DG discretization of `u_t + div F(u) = lap a(u)` on a uniform rectangular grid.
///
/// With [`Convection2D::Vorticity`] the unknown is the vorticity and the velocity
/// is rebuilt from a spectral stream-function solve at every evaluation.
#[derive(Debug)]
pub struct Scheme2D {
    pub problem: Problem2D,
    pub grid: Grid2D,
    pub basis: Basis2D,
    pub options: SchemeOptions,
    stream: Option<StreamSolver>,
    removed_mean: Mutex<f64>,
}

/// Convective transport resolved for one evaluation.
enum Transport<'a> {
    None,
    Flux { f: &'a crate::problem::ScalarLaw, g: &'a crate::problem::ScalarLaw },
    Velocity(VelocitySamples),
}

struct EdgeTraces {
    /// Per cell and edge quadrature point: east/west values and reference x-derivatives,
    /// north/south values and reference y-derivatives.
    east: Vec<f64>,
    east_d: Vec<f64>,
    west: Vec<f64>,
    north: Vec<f64>,
    north_d: Vec<f64>,
    south: Vec<f64>,
}

impl Scheme2D {
    pub fn new(problem: Problem2D, nx: usize, ny: usize, k: usize, options: SchemeOptions) -> Result<Self> {
        options.diffusive.validate()?;
        let gx = Grid1D::new(problem.x_range.0, problem.x_range.1, nx, problem.boundary)?;
        let gy = Grid1D::new(problem.y_range.0, problem.y_range.1, ny, problem.boundary)?;
        let grid = Grid2D::new(gx, gy);
        let basis = Basis2D::new(k)?;
        let stream = match problem.convection {
            Convection2D::Vorticity => Some(StreamSolver::new(&grid, &basis)?),
            _ => None,
        };
        Ok(Self {
            problem,
            grid,
            basis,
            options,
            stream,
            removed_mean: Mutex::new(0.0),
        })
    }

    pub fn k(&self) -> usize {
        self.basis.k
    }

    pub fn project_initial(&self) -> Result<DGField2D> {
        DGField2D::project(
            self.grid,
            self.k(),
            &self.problem.initial,
            self.problem.initial_subcells,
            self.problem.bounds,
        )
    }

    pub fn field(&self, coeffs: Vec<f64>) -> DGField2D {
        DGField2D {
            grid: self.grid,
            k: self.k(),
            coeffs,
            bounds: self.problem.bounds,
        }
    }

    /// Largest vorticity mean removed before a stream-function solve so far.
    pub fn removed_mean(&self) -> f64 {
        *self.removed_mean.lock().unwrap()
    }

    fn averages(&self, u: &[f64]) -> Vec<f64> {
        u.iter().step_by(self.basis.dim()).copied().collect()
    }

    /// Velocity at the operator's quadrature points, if the problem has one.
    pub fn velocity_samples(&self, u: &[f64], t: f64) -> Result<Option<VelocitySamples>> {
        match &self.problem.convection {
            Convection2D::Prescribed(v) => Ok(Some(sample_prescribed(v.as_ref(), &self.grid, &self.basis, t))),
            Convection2D::Vorticity => {
                let solver = self.stream.as_ref().expect("vorticity scheme without stream solver");
                let psi = self.solve_stream(solver, u)?;
                Ok(Some(solver.samples(&psi)))
            }
            _ => Ok(None),
        }
    }

    /// Edge-mean normal velocities for the first-order flux, if the problem has a velocity.
    pub fn edge_means(&self, u: &[f64], t: f64) -> Result<Option<EdgeMeans>> {
        let psi = match &self.problem.convection {
            Convection2D::Prescribed(v) => prescribed_vertex_stream(v.as_ref(), &self.grid, t),
            Convection2D::Vorticity => {
                let solver = self.stream.as_ref().expect("vorticity scheme without stream solver");
                let psi = self.solve_stream(solver, u)?;
                solver.vertex_stream(&psi)
            }
            _ => return Ok(None),
        };
        Ok(Some(EdgeMeans::from_vertex_stream(&self.grid, &psi)))
    }

    fn solve_stream(&self, solver: &StreamSolver, u: &[f64]) -> Result<crate::incompressible::SpectralField> {
        let (psi, mean) = solver.solve_removing_mean(&self.averages(u))?;
        let mut m = self.removed_mean.lock().unwrap();
        *m = m.max(mean.abs());
        Ok(psi)
    }

    fn traces(&self, u: &[f64]) -> EdgeTraces {
        let d = self.basis.dim();
        let nq = self.basis.nq();
        let cells = self.grid.cells();
        let b = &self.basis;
        let mut t = EdgeTraces {
            east: vec![0.0; cells * nq],
            east_d: vec![0.0; cells * nq],
            west: vec![0.0; cells * nq],
            north: vec![0.0; cells * nq],
            north_d: vec![0.0; cells * nq],
            south: vec![0.0; cells * nq],
        };
        for c in 0..cells {
            let cu = &u[c * d..(c + 1) * d];
            for q in 0..nq {
                let r = q * d..(q + 1) * d;
                t.east[c * nq + q] = dot(cu, &b.east.phi[r.clone()]);
                t.east_d[c * nq + q] = dot(cu, &b.east.dxi[r.clone()]);
                t.west[c * nq + q] = dot(cu, &b.west.phi[r.clone()]);
                t.north[c * nq + q] = dot(cu, &b.north.phi[r.clone()]);
                t.north_d[c * nq + q] = dot(cu, &b.north.deta[r.clone()]);
                t.south[c * nq + q] = dot(cu, &b.south.phi[r]);
            }
        }
        t
    }

    fn transport(&self, u: &[f64], t: f64) -> Result<Transport<'_>> {
        Ok(match &self.problem.convection {
            Convection2D::None => Transport::None,
            Convection2D::Flux { f, g } => Transport::Flux { f, g },
            _ => Transport::Velocity(self.velocity_samples(u, t)?.expect("velocity problem")),
        })
    }

    /// Time derivative of all coefficients and the edge-mean fluxes `(H, G)`.
    pub fn rhs(&self, u: &[f64], t: f64) -> Result<(Vec<f64>, FluxRecord)> {
        let transport = self.transport(u, t)?;
        self.rhs_with(u, &transport)
    }

    fn rhs_with(&self, u: &[f64], transport: &Transport<'_>) -> Result<(Vec<f64>, FluxRecord)> {
        let g = &self.grid;
        let (nx, ny) = (g.nx(), g.ny());
        let (hx, hy) = (g.hx(), g.hy());
        let b = &self.basis;
        let d = b.dim();
        let nq = b.nq();
        let w = &b.rule.weights;
        let diffusion = self.problem.diffusion.as_ref();
        let penalty = diffusion.map_or(0.0, |a| self.options.diffusive.alpha * a.max_speed() / hx.max(hy));
        let tr = self.traces(u);
        let periodic = g.is_periodic();
        let ghost_lo = g.x.boundary.ghost(false).unwrap_or(0.0);
        let ghost_hi = g.x.boundary.ghost(true).unwrap_or(0.0);

        // pointwise H and a(u+) on vertical edges
        let mut h_pts = vec![0.0; (nx + 1) * ny * nq];
        let mut ah_x = vec![0.0; (nx + 1) * ny * nq];
        let mut record = FluxRecord::zeros_2d(nx, ny);
        let last_x = if periodic { nx - 1 } else { nx };
        for j in 0..ny {
            for i in 0..=last_x {
                let e = j * (nx + 1) + i;
                let mut mean = 0.0;
                for q in 0..nq {
                    let (um, dum) = if i > 0 {
                        let c = g.cell(i - 1, j) * nq + q;
                        (tr.east[c], 2.0 / hx * tr.east_d[c])
                    } else if periodic {
                        let c = g.cell(nx - 1, j) * nq + q;
                        (tr.east[c], 2.0 / hx * tr.east_d[c])
                    } else {
                        (ghost_lo, 0.0)
                    };
                    let up = if i < nx { tr.west[g.cell(i, j) * nq + q] } else { ghost_hi };
                    let conv = match transport {
                        Transport::None => 0.0,
                        Transport::Flux { f, .. } => convective_flux(um, up, f, f.max_speed()),
                        Transport::Velocity(s) => upwind(s.vertical[e * nq + q], um, up),
                    };
                    let (diff, ahat) = diffusion.map_or((0.0, 0.0), |a| {
                        (a.derivative(um) * dum + penalty * (up - um), a.eval(up))
                    });
                    let hq = conv - diff;
                    h_pts[e * nq + q] = hq;
                    ah_x[e * nq + q] = ahat;
                    mean += 0.5 * w[q] * hq;
                }
                record.x[e] = mean;
            }
            if periodic {
                let (first, last) = (j * (nx + 1), j * (nx + 1) + nx);
                record.x[last] = record.x[first];
                for q in 0..nq {
                    h_pts[last * nq + q] = h_pts[first * nq + q];
                    ah_x[last * nq + q] = ah_x[first * nq + q];
                }
            }
        }

        let ghost_lo = g.y.boundary.ghost(false).unwrap_or(0.0);
        let ghost_hi = g.y.boundary.ghost(true).unwrap_or(0.0);
        let mut g_pts = vec![0.0; nx * (ny + 1) * nq];
        let mut ah_y = vec![0.0; nx * (ny + 1) * nq];
        let last_y = if periodic { ny - 1 } else { ny };
        for j in 0..=last_y {
            for i in 0..nx {
                let e = j * nx + i;
                let mut mean = 0.0;
                for q in 0..nq {
                    let (um, dum) = if j > 0 {
                        let c = g.cell(i, j - 1) * nq + q;
                        (tr.north[c], 2.0 / hy * tr.north_d[c])
                    } else if periodic {
                        let c = g.cell(i, ny - 1) * nq + q;
                        (tr.north[c], 2.0 / hy * tr.north_d[c])
                    } else {
                        (ghost_lo, 0.0)
                    };
                    let up = if j < ny { tr.south[g.cell(i, j) * nq + q] } else { ghost_hi };
                    let conv = match transport {
                        Transport::None => 0.0,
                        Transport::Flux { g, .. } => convective_flux(um, up, g, g.max_speed()),
                        Transport::Velocity(s) => upwind(s.horizontal[e * nq + q], um, up),
                    };
                    let (diff, ahat) = diffusion.map_or((0.0, 0.0), |a| {
                        (a.derivative(um) * dum + penalty * (up - um), a.eval(up))
                    });
                    let gq = conv - diff;
                    g_pts[e * nq + q] = gq;
                    ah_y[e * nq + q] = ahat;
                    mean += 0.5 * w[q] * gq;
                }
                record.y[e] = mean;
            }
        }
        if periodic {
            let top = ny * nx;
            for i in 0..nx {
                record.y[top + i] = record.y[i];
                for q in 0..nq {
                    g_pts[(top + i) * nq + q] = g_pts[i * nq + q];
                    ah_y[(top + i) * nq + q] = ah_y[i * nq + q];
                }
            }
        }
        if let Some(pos) = record.x.iter().chain(&record.y).chain(&ah_x).chain(&ah_y).position(|v| !v.is_finite()) {
            return Err(Error::numerical(
                "edge fluxes",
                format!("non-finite flux value (entry {pos})"),
            ));
        }

        let mut out = vec![0.0; u.len()];
        let rec = &record;
        out.par_chunks_mut(d).enumerate().for_each(|(c, dc)| {
            let (i, j) = (c % nx, c / nx);
            let cu = &u[c * d..(c + 1) * d];
            let e_idx = j * (nx + 1) + i + 1;
            let w_idx = j * (nx + 1) + i;
            let n_idx = (j + 1) * nx + i;
            let s_idx = j * nx + i;
            dc[0] = -(rec.x[e_idx] - rec.x[w_idx]) / hx - (rec.y[n_idx] - rec.y[s_idx]) / hy;
            if d == 1 {
                return;
            }
            let mut res = vec![0.0; d];
            for qy in 0..nq {
                for qx in 0..nq {
                    let qq = qy * nq + qx;
                    let r = qq * d..(qq + 1) * d;
                    let uq = dot(cu, &b.phi[r.clone()]);
                    let ww = w[qx] * w[qy];
                    let (f1, f2) = match transport {
                        Transport::None => (0.0, 0.0),
                        Transport::Flux { f, g } => (f.eval(uq), g.eval(uq)),
                        Transport::Velocity(s) => {
                            let (vx, vy) = s.volume[c * nq * nq + qq];
                            (uq * vx, uq * vy)
                        }
                    };
                    let aq = diffusion.map_or(0.0, |a| a.eval(uq));
                    for m in 1..d {
                        let k = qq * d + m;
                        res[m] += ww
                            * (0.5 * hy * f1 * b.dxi[k]
                                + 0.5 * hx * f2 * b.deta[k]
                                + aq * (hy / hx * b.dxixi[k] + hx / hy * b.detaeta[k]));
                    }
                }
            }
            for q in 0..nq {
                let (he, hw) = (h_pts[e_idx * nq + q], h_pts[w_idx * nq + q]);
                let (gn, gs) = (g_pts[n_idx * nq + q], g_pts[s_idx * nq + q]);
                let (ae, aw) = (ah_x[e_idx * nq + q], ah_x[w_idx * nq + q]);
                let (an, as_) = (ah_y[n_idx * nq + q], ah_y[s_idx * nq + q]);
                for m in 1..d {
                    let k = q * d + m;
                    res[m] += w[q]
                        * (0.5 * hy * (-he * b.east.phi[k] + hw * b.west.phi[k])
                            + 0.5 * hx * (-gn * b.north.phi[k] + gs * b.south.phi[k])
                            + hy / hx * (-ae * b.east.dxi[k] + aw * b.west.dxi[k])
                            + hx / hy * (-an * b.north.deta[k] + as_ * b.south.deta[k]));
                }
            }
            for m in 1..d {
                dc[m] = res[m] * b.mass_scale(m) / (hx * hy);
            }
        });
        Ok((out, record))
    }

    /// Neighbor average across the west/east/south/north side of cell `(i, j)`.
    pub(crate) fn neighbor(&self, ubar: &[f64], i: usize, j: usize, side: Side) -> f64 {
        let g = &self.grid;
        let (nx, ny) = (g.nx(), g.ny());
        let wrap = |v: usize, n: usize, up: bool| if up { (v + 1) % n } else { (v + n - 1) % n };
        let periodic = g.is_periodic();
        match side {
            Side::West if i == 0 && !periodic => g.x.boundary.ghost(false).unwrap(),
            Side::East if i + 1 == nx && !periodic => g.x.boundary.ghost(true).unwrap(),
            Side::South if j == 0 && !periodic => g.y.boundary.ghost(false).unwrap(),
            Side::North if j + 1 == ny && !periodic => g.y.boundary.ghost(true).unwrap(),
            Side::West => ubar[g.cell(wrap(i, nx, false), j)],
            Side::East => ubar[g.cell(wrap(i, nx, true), j)],
            Side::South => ubar[g.cell(i, wrap(j, ny, false))],
            Side::North => ubar[g.cell(i, wrap(j, ny, true))],
        }
    }

    /// First-order edge fluxes from the cell averages: Lax-Friedrichs (or upwinding
    /// with edge-mean velocities) minus a centered difference of `a`.
    pub fn low_order_fluxes(&self, ubar: &[f64], means: Option<&EdgeMeans>) -> FluxRecord {
        let g = &self.grid;
        let (nx, ny) = (g.nx(), g.ny());
        let (hx, hy) = (g.hx(), g.hy());
        let diffusion = self.problem.diffusion.as_ref();
        let mut rec = FluxRecord::zeros_2d(nx, ny);
        for j in 0..ny {
            for i in 0..=nx {
                let e = j * (nx + 1) + i;
                let left = if i == 0 { self.neighbor(ubar, 0, j, Side::West) } else { ubar[g.cell(i - 1, j)] };
                let right = if i == nx { self.neighbor(ubar, nx - 1, j, Side::East) } else { ubar[g.cell(i, j)] };
                let conv = match (&self.problem.convection, means) {
                    (Convection2D::Flux { f, .. }, _) => convective_flux(left, right, f, f.max_speed()),
                    (_, Some(m)) => upwind(m.vertical[e], left, right),
                    _ => 0.0,
                };
                let diff = diffusion.map_or(0.0, |a| (a.eval(right) - a.eval(left)) / hx);
                rec.x[e] = conv - diff;
            }
        }
        for j in 0..=ny {
            for i in 0..nx {
                let e = j * nx + i;
                let below = if j == 0 { self.neighbor(ubar, i, 0, Side::South) } else { ubar[g.cell(i, j - 1)] };
                let above = if j == ny { self.neighbor(ubar, i, ny - 1, Side::North) } else { ubar[g.cell(i, j)] };
                let conv = match (&self.problem.convection, means) {
                    (Convection2D::Flux { g, .. }, _) => convective_flux(below, above, g, g.max_speed()),
                    (_, Some(m)) => upwind(m.horizontal[e], below, above),
                    _ => 0.0,
                };
                let diff = diffusion.map_or(0.0, |a| (a.eval(above) - a.eval(below)) / hy);
                rec.y[e] = conv - diff;
            }
        }
        if g.is_periodic() {
            for j in 0..ny {
                rec.x[j * (nx + 1) + nx] = rec.x[j * (nx + 1)];
            }
            for i in 0..nx {
                rec.y[ny * nx + i] = rec.y[i];
            }
        }
        rec
    }

    /// `(max|f'|, max|g'|, max|a'|)`, with measured velocities for velocity problems.
    pub fn wave_speeds(&self, u: &[f64], t: f64) -> Result<(f64, f64, f64)> {
        let lambda = self.problem.diffusion.as_ref().map_or(0.0, |a| a.max_speed());
        let (ax, ay) = match &self.problem.convection {
            Convection2D::None => (0.0, 0.0),
            Convection2D::Flux { f, g } => (f.max_speed(), g.max_speed()),
            _ => {
                let s = self.velocity_samples(u, t)?.expect("velocity problem");
                (s.max_u(), s.max_v())
            }
        };
        Ok((ax, ay, lambda))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    West,
    East,
    South,
    North,
}

/// Upwind flux for `vn u`.
#[inline]
fn upwind(vn: f64, u_minus: f64, u_plus: f64) -> f64 {
    vn.max(0.0) * u_minus + vn.min(0.0) * u_plus
}

impl Discretization for Scheme2D {
    fn modes(&self) -> usize {
        self.basis.dim()
    }

    fn bounds(&self) -> BoundPair {
        self.problem.bounds
    }

    fn cell_volume(&self) -> f64 {
        self.grid.cell_area()
    }

    fn is_periodic(&self) -> bool {
        self.grid.is_periodic()
    }

    fn rhs(&self, u: &[f64], t: f64) -> Result<(Vec<f64>, FluxRecord)> {
        Scheme2D::rhs(self, u, t)
    }

    fn stable_dt(&self, u: &[f64], t: f64, cfl: &CflConfig) -> Result<f64> {
        let (ax, ay, lambda) = self.wave_speeds(u, t)?;
        cfl.dt_2d(self.grid.hx(), self.grid.hy(), self.k(), ax, ay, lambda)
    }

    fn limit_stage(&self, u: &mut [f64]) {
        if let Some(m) = self.options.tvb {
            tvb_limit_2d(u, &self.basis, &self.grid, m);
        }
    }

    fn mpp_enabled(&self) -> bool {
        self.options.mpp
    }

    fn limit_averages(
        &self,
        u_n: &[f64],
        t: f64,
        dt: f64,
        high: &FluxRecord,
    ) -> Result<(Vec<f64>, LimiterReport)> {
        let ubar = self.averages(u_n);
        let means = self.edge_means(u_n, t)?;
        let low = self.low_order_fluxes(&ubar, means.as_ref());
        let g = &self.grid;
        let (lx, ly) = (dt / g.hx(), dt / g.hy());
        let (limited, report) = apply_mpp_limiter_2d(
            high,
            &low,
            &ubar,
            self.problem.bounds,
            (lx, ly),
            (g.nx(), g.ny()),
            g.is_periodic(),
        )?;
        let nx = g.nx();
        let next = (0..ubar.len())
            .map(|c| {
                let (i, j) = (c % nx, c / nx);
                ubar[c]
                    - lx * (limited.x[j * (nx + 1) + i + 1] - limited.x[j * (nx + 1) + i])
                    - ly * (limited.y[(j + 1) * nx + i] - limited.y[j * nx + i])
            })
            .collect();
        Ok((next, report))
    }
}

/// One-off evaluation of the 2D operator for a field.
pub fn semidiscrete_rhs_2d(
    field: &DGField2D,
    problem: &Problem2D,
    config: &DiffusiveFluxConfig,
    t: f64,
) -> Result<(Vec<f64>, FluxRecord)> {
    let options = SchemeOptions {
        diffusive: *config,
        ..SchemeOptions::new(field.k)
    };
    let mut p = problem.clone();
    p.x_range = (field.grid.x.a, field.grid.x.b);
    p.y_range = (field.grid.y.a, field.grid.y.b);
    let scheme = Scheme2D::new(p, field.grid.nx(), field.grid.ny(), field.k, options)?;
    scheme.rhs(&field.coeffs, t)
}
