use rayon::prelude::*;

use super::{FluxRecord, SchemeOptions};
use crate::basis::{dot, Basis1D};
use crate::error::{Error, Result};
use crate::field::DGField1D;
use crate::flux::{convective_flux, diffusive_fluxes_1d, first_order_flux_1d, DiffusiveFluxConfig};
use crate::limiter::{apply_mpp_limiter_1d, tvb_limit_1d, LimiterReport};
use crate::mesh::Grid1D;
use crate::problem::{BoundPair, Problem1D};
use crate::time::{CflConfig, Discretization};

/// Direct DG discretization of `u_t + f(u)_x = a(u)_xx` on a uniform grid.
#[derive(Debug, Clone)]
pub struct Scheme1D {
    pub problem: Problem1D,
    pub grid: Grid1D,
    pub basis: Basis1D,
    pub options: SchemeOptions,
}

/// Left and right states, plus the x-derivative of the left state, at each interface.
struct Traces {
    minus: Vec<f64>,
    plus: Vec<f64>,
    dx_minus: Vec<f64>,
}

impl Scheme1D {
    pub fn new(problem: Problem1D, cells: usize, k: usize, options: SchemeOptions) -> Result<Self> {
        options.diffusive.validate()?;
        let (a, b) = problem.domain;
        let grid = Grid1D::new(a, b, cells, problem.boundary)?;
        Ok(Self {
            basis: Basis1D::new(k)?,
            problem,
            grid,
            options,
        })
    }

    pub fn k(&self) -> usize {
        self.basis.k
    }

    pub fn project_initial(&self) -> Result<DGField1D> {
        DGField1D::project(
            self.grid,
            self.k(),
            &self.problem.initial,
            self.problem.initial_subcells,
            self.problem.bounds,
        )
    }

    pub fn field(&self, coeffs: Vec<f64>) -> DGField1D {
        DGField1D {
            grid: self.grid,
            k: self.k(),
            coeffs,
            bounds: self.problem.bounds,
        }
    }

    fn traces(&self, u: &[f64]) -> Traces {
        let n = self.grid.n;
        let d = self.basis.dim();
        let scale = 2.0 / self.grid.h;
        let right = |j: usize| dot(&u[j * d..(j + 1) * d], &self.basis.right);
        let left = |j: usize| dot(&u[j * d..(j + 1) * d], &self.basis.left);
        let slope = |j: usize| scale * dot(&u[j * d..(j + 1) * d], &self.basis.dright);
        let mut t = Traces {
            minus: vec![0.0; n + 1],
            plus: vec![0.0; n + 1],
            dx_minus: vec![0.0; n + 1],
        };
        for i in 1..n {
            t.minus[i] = right(i - 1);
            t.dx_minus[i] = slope(i - 1);
            t.plus[i] = left(i);
        }
        let boundary = self.grid.boundary;
        match (boundary.ghost(false), boundary.ghost(true)) {
            (Some(gl), Some(gr)) => {
                t.minus[0] = gl;
                t.plus[0] = left(0);
                t.minus[n] = right(n - 1);
                t.dx_minus[n] = slope(n - 1);
                t.plus[n] = gr;
            }
            _ => {
                t.minus[0] = right(n - 1);
                t.dx_minus[0] = slope(n - 1);
                t.plus[0] = left(0);
                t.minus[n] = t.minus[0];
                t.dx_minus[n] = t.dx_minus[0];
                t.plus[n] = t.plus[0];
            }
        }
        t
    }

    /// Time derivative of all coefficients and the cell-average fluxes `H = f^ - a~`.
    pub fn rhs(&self, u: &[f64]) -> Result<(Vec<f64>, FluxRecord)> {
        let n = self.grid.n;
        let h = self.grid.h;
        let d = self.basis.dim();
        let p = &self.problem;
        let cfg = &self.options.diffusive;
        let tr = self.traces(u);
        let mut record = FluxRecord::zeros_1d(n);
        let mut hat_a = vec![0.0; n + 1];
        for i in 0..=n {
            let (um, up) = (tr.minus[i], tr.plus[i]);
            let conv = p.flux.as_ref().map_or(0.0, |f| convective_flux(um, up, f, f.max_speed()));
            let (tilde, ha) = p
                .diffusion
                .as_ref()
                .map_or((0.0, 0.0), |a| diffusive_fluxes_1d(um, up, tr.dx_minus[i], a, cfg, h));
            record.x[i] = conv - tilde;
            hat_a[i] = ha;
        }
        if let Some(i) = record.x.iter().chain(&hat_a).position(|v| !v.is_finite()) {
            let i = i % (n + 1);
            return Err(Error::numerical(
                format!("cell {}", i.min(n - 1)),
                format!("non-finite interface flux at interface {i}"),
            ));
        }

        let b = &self.basis;
        let nq = b.rule.len();
        let mut out = vec![0.0; u.len()];
        out.par_chunks_mut(d).enumerate().for_each(|(j, dc)| {
            let c = &u[j * d..(j + 1) * d];
            let mut fq = [0.0; crate::quadrature::MAX_GAUSS_POINTS];
            let mut aq = [0.0; crate::quadrature::MAX_GAUSS_POINTS];
            for q in 0..nq {
                let uq = dot(c, &b.phi[q * d..(q + 1) * d]);
                let w = b.rule.weights[q];
                fq[q] = w * p.flux.as_ref().map_or(0.0, |f| f.eval(uq));
                aq[q] = w * p.diffusion.as_ref().map_or(0.0, |a| a.eval(uq));
            }
            let (hl, hr) = (record.x[j], record.x[j + 1]);
            let (al, ar) = (hat_a[j], hat_a[j + 1]);
            dc[0] = -(hr - hl) / h;
            for m in 1..d {
                let mut r = 0.0;
                for q in 0..nq {
                    r += fq[q] * b.dphi[q * d + m] + 2.0 / h * aq[q] * b.d2phi[q * d + m];
                }
                r += -hr * b.right[m] + hl * b.left[m];
                r += 2.0 / h * (-ar * b.dright[m] + al * b.dleft[m]);
                dc[m] = r * b.mass_scale(m) / h;
            }
        });
        Ok((out, record))
    }

    /// Ghost-aware neighbor averages `(left, right)` of cell `j`.
    pub(crate) fn neighbors(&self, ubar: &[f64], j: usize) -> (f64, f64) {
        let n = self.grid.n;
        let b = self.grid.boundary;
        let left = if j > 0 {
            ubar[j - 1]
        } else {
            b.ghost(false).unwrap_or(ubar[n - 1])
        };
        let right = if j + 1 < n {
            ubar[j + 1]
        } else {
            b.ghost(true).unwrap_or(ubar[0])
        };
        (left, right)
    }

    /// First-order fluxes at every interface from the cell averages.
    pub fn low_order_fluxes(&self, ubar: &[f64]) -> FluxRecord {
        let n = self.grid.n;
        let p = &self.problem;
        let mut rec = FluxRecord::zeros_1d(n);
        for i in 0..=n {
            let left = if i == 0 { self.neighbors(ubar, 0).0 } else { ubar[i - 1] };
            let right = if i == n { self.neighbors(ubar, n - 1).1 } else { ubar[i] };
            rec.x[i] = first_order_flux_1d(left, right, p.flux.as_ref(), p.diffusion.as_ref(), self.grid.h);
        }
        if self.grid.boundary.is_periodic() {
            rec.x[n] = rec.x[0];
        }
        rec
    }

    fn max_wave_speeds(&self) -> (f64, f64) {
        let p = &self.problem;
        (
            p.flux.as_ref().map_or(0.0, |f| f.max_speed()),
            p.diffusion.as_ref().map_or(0.0, |a| a.max_speed()),
        )
    }
}

impl Discretization for Scheme1D {
    fn modes(&self) -> usize {
        self.basis.dim()
    }

    fn bounds(&self) -> BoundPair {
        self.problem.bounds
    }

    fn cell_volume(&self) -> f64 {
        self.grid.h
    }

    fn is_periodic(&self) -> bool {
        self.grid.boundary.is_periodic()
    }

    fn rhs(&self, u: &[f64], _t: f64) -> Result<(Vec<f64>, FluxRecord)> {
        Scheme1D::rhs(self, u)
    }

    fn stable_dt(&self, _u: &[f64], _t: f64, cfl: &CflConfig) -> Result<f64> {
        let (fmax, amax) = self.max_wave_speeds();
        cfl.dt_1d(self.grid.h, self.k(), fmax, amax)
    }

    fn limit_stage(&self, u: &mut [f64]) {
        if let Some(m) = self.options.tvb {
            tvb_limit_1d(u, self.basis.dim(), &self.grid, m);
        }
    }

    fn mpp_enabled(&self) -> bool {
        self.options.mpp
    }

    fn limit_averages(
        &self,
        u_n: &[f64],
        _t: f64,
        dt: f64,
        high: &FluxRecord,
    ) -> Result<(Vec<f64>, LimiterReport)> {
        let ubar: Vec<f64> = u_n.iter().step_by(self.basis.dim()).copied().collect();
        let low = self.low_order_fluxes(&ubar);
        let lambda = dt / self.grid.h;
        let (limited, report) =
            apply_mpp_limiter_1d(high, &low, &ubar, self.problem.bounds, lambda, self.grid.boundary.is_periodic())?;
        let next = (0..ubar.len())
            .map(|j| ubar[j] - lambda * (limited.x[j + 1] - limited.x[j]))
            .collect();
        Ok((next, report))
    }
}

/// One-off evaluation of the 1D operator for a field.
pub fn semidiscrete_rhs_1d(
    field: &DGField1D,
    problem: &Problem1D,
    config: &DiffusiveFluxConfig,
) -> Result<(Vec<f64>, FluxRecord)> {
    let options = SchemeOptions {
        diffusive: *config,
        ..SchemeOptions::new(field.k)
    };
    let mut scheme = Scheme1D::new(problem.clone(), field.grid.n, field.k, options)?;
    scheme.grid = field.grid;
    scheme.rhs(&field.coeffs)
}
