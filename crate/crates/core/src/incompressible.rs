//! Vorticity-stream-function coupling on a doubly periodic rectangle.
//!
//! The stream function solves `lap psi = omega` with `omega` known through its
//! cell averages. Each Fourier coefficient of the averages is the point-value
//! coefficient times `sinc(kappa h / 2)` and a half-cell phase, which is divided
//! out before the Poisson solve, so the recovered velocity `(u, v) = (-psi_y, psi_x)`
//! is spectrally accurate and analytically divergence free.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::basis::Basis2D;
use crate::error::{Error, Result};
use crate::field::DGField2D;
use crate::flux::DiffusiveFluxConfig;
use crate::mesh::Grid2D;
use crate::operator::{EdgeMeans, FluxRecord, Scheme2D, SchemeOptions, VelocitySamples};
use crate::problem::{BoundPair, Convection2D, Problem2D, ScalarLaw};

/// Largest vorticity mean accepted by the Poisson solve.
pub const MEAN_TOLERANCE: f64 = 1e-10;

/// Fourier representation `psi(x, y) = sum c[p, q] exp(i kx (x - x0) + i ky (y - y0))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub nx: usize,
    pub ny: usize,
    pub origin: (f64, f64),
    pub lengths: (f64, f64),
    /// `coeffs[q * nx + p]`
    pub coeffs: Vec<Complex64>,
}

/// Signed wavenumber index of DFT bin `p`; `None` for the Nyquist bin.
fn signed_index(p: usize, n: usize) -> Option<f64> {
    if 2 * p == n {
        None
    } else if 2 * p < n {
        Some(p as f64)
    } else {
        Some(p as f64 - n as f64)
    }
}

impl SpectralField {
    fn kx(&self, p: usize) -> f64 {
        signed_index(p, self.nx).map_or(0.0, |s| 2.0 * PI * s / self.lengths.0)
    }

    fn ky(&self, q: usize) -> f64 {
        signed_index(q, self.ny).map_or(0.0, |s| 2.0 * PI * s / self.lengths.1)
    }

    /// Direct evaluation of the series.
    pub fn value_at(&self, x: f64, y: f64) -> f64 {
        self.sum_at(x, y, |_, _| Complex64::new(1.0, 0.0))
    }

    fn sum_at(&self, x: f64, y: f64, factor: impl Fn(f64, f64) -> Complex64) -> f64 {
        let (dx, dy) = (x - self.origin.0, y - self.origin.1);
        let mut s = Complex64::new(0.0, 0.0);
        for q in 0..self.ny {
            let ky = self.ky(q);
            for p in 0..self.nx {
                let c = self.coeffs[q * self.nx + p];
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let kx = self.kx(p);
                s += c * factor(kx, ky) * Complex64::from_polar(1.0, kx * dx + ky * dy);
            }
        }
        s.re
    }

    /// `(u, v) = (-psi_y, psi_x)` at one point.
    pub fn velocity(&self, x: f64, y: f64) -> (f64, f64) {
        let i = Complex64::new(0.0, 1.0);
        (
            -self.sum_at(x, y, |_, ky| i * ky),
            self.sum_at(x, y, |kx, _| i * kx),
        )
    }

    /// `lap psi` at one point.
    pub fn laplacian(&self, x: f64, y: f64) -> f64 {
        self.sum_at(x, y, |kx, ky| Complex64::new(-(kx * kx + ky * ky), 0.0))
    }
}

/// Velocity of `psi` at arbitrary points by direct Fourier summation.
pub fn velocity_at(psi: &SpectralField, points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    points.iter().map(|&(x, y)| psi.velocity(x, y)).collect()
}

/// FFT-based Poisson solver and velocity sampler for one grid and basis.
pub struct StreamSolver {
    grid: Grid2D,
    nodes: Vec<f64>,
    fx: Arc<dyn Fft<f64>>,
    fy: Arc<dyn Fft<f64>>,
    ix: Arc<dyn Fft<f64>>,
    iy: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for StreamSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StreamSolver")
            .field("nx", &self.grid.nx())
            .field("ny", &self.grid.ny())
            .finish_non_exhaustive()
    }
}

impl StreamSolver {
    pub fn new(grid: &Grid2D, basis: &Basis2D) -> Result<Self> {
        Self::with_nodes(grid, basis.rule.nodes.clone())
    }

    /// Solver sampling velocities at the given reference quadrature nodes.
    pub fn with_nodes(grid: &Grid2D, nodes: Vec<f64>) -> Result<Self> {
        if !grid.is_periodic() {
            return Err(Error::Unsupported(
                "the stream-function solve needs periodic boundaries".into(),
            ));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            grid: *grid,
            nodes,
            fx: planner.plan_fft_forward(grid.nx()),
            fy: planner.plan_fft_forward(grid.ny()),
            ix: planner.plan_fft_inverse(grid.nx()),
            iy: planner.plan_fft_inverse(grid.ny()),
        })
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let (px, py) = if inverse { (&self.ix, &self.iy) } else { (&self.fx, &self.fy) };
        for row in data.chunks_exact_mut(nx) {
            px.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); ny];
        for i in 0..nx {
            for j in 0..ny {
                col[j] = data[j * nx + i];
            }
            py.process(&mut col);
            for j in 0..ny {
                data[j * nx + i] = col[j];
            }
        }
    }

    fn spectral(&self, coeffs: Vec<Complex64>) -> SpectralField {
        SpectralField {
            nx: self.grid.nx(),
            ny: self.grid.ny(),
            origin: (self.grid.x.a, self.grid.y.a),
            lengths: (self.grid.x.length(), self.grid.y.length()),
            coeffs,
        }
    }

    /// Stream function of vorticity cell averages `[j * nx + i]`; the mean must vanish.
    pub fn solve(&self, omega: &[f64]) -> Result<SpectralField> {
        Ok(self.solve_removing_mean(omega)?.0)
    }

    /// As [`solve`](Self::solve), also returning the mean that was subtracted.
    pub fn solve_removing_mean(&self, omega: &[f64]) -> Result<(SpectralField, f64)> {
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        assert_eq!(omega.len(), nx * ny);
        let mean = omega.iter().sum::<f64>() / omega.len() as f64;
        if !mean.is_finite() || mean.abs() > MEAN_TOLERANCE {
            return Err(Error::Solvability { mean });
        }
        let mut data: Vec<Complex64> = omega.iter().map(|&w| Complex64::new(w - mean, 0.0)).collect();
        self.transform(&mut data, false);
        let (hx, hy) = (self.grid.hx(), self.grid.hy());
        let norm = (nx * ny) as f64;
        let mut psi = self.spectral(vec![Complex64::new(0.0, 0.0); nx * ny]);
        for q in 0..ny {
            for p in 0..nx {
                let (Some(_), Some(_)) = (signed_index(p, nx), signed_index(q, ny)) else {
                    continue;
                };
                if p == 0 && q == 0 {
                    continue;
                }
                let (kx, ky) = (psi.kx(p), psi.ky(q));
                let cell = sinc(0.5 * kx * hx) * sinc(0.5 * ky * hy);
                let phase = Complex64::from_polar(1.0, 0.5 * (kx * hx + ky * hy));
                let w_hat = data[q * nx + p] / (norm * cell * phase);
                psi.coeffs[q * nx + p] = -w_hat / (kx * kx + ky * ky);
            }
        }
        Ok((psi, mean))
    }

    /// Values of `factor(kx, ky) * psi` on the grid shifted by `(sx hx, sy hy)` from
    /// the lower-left corner, as `[j * nx + i]`.
    fn shifted(&self, psi: &SpectralField, sx: f64, sy: f64, factor: impl Fn(f64, f64) -> Complex64) -> Vec<f64> {
        let (nx, ny) = (psi.nx, psi.ny);
        let (hx, hy) = (self.grid.hx(), self.grid.hy());
        let mut data = vec![Complex64::new(0.0, 0.0); nx * ny];
        for q in 0..ny {
            let ky = psi.ky(q);
            for p in 0..nx {
                let c = psi.coeffs[q * nx + p];
                if c.re == 0.0 && c.im == 0.0 {
                    continue;
                }
                let kx = psi.kx(p);
                data[q * nx + p] = c * factor(kx, ky) * Complex64::from_polar(1.0, kx * sx * hx + ky * sy * hy);
            }
        }
        self.transform(&mut data, true);
        data.into_iter().map(|z| z.re).collect()
    }

    /// Velocity at the DG volume and edge quadrature points.
    pub fn samples(&self, psi: &SpectralField) -> VelocitySamples {
        let (nx, ny) = (psi.nx, psi.ny);
        let nq = self.nodes.len();
        let i = Complex64::new(0.0, 1.0);
        let offsets: Vec<f64> = self.nodes.iter().map(|&x| 0.5 * (1.0 + x)).collect();
        let mut s = VelocitySamples {
            volume: vec![(0.0, 0.0); nx * ny * nq * nq],
            vertical: vec![0.0; (nx + 1) * ny * nq],
            horizontal: vec![0.0; nx * (ny + 1) * nq],
        };
        for (qy, &sy) in offsets.iter().enumerate() {
            for (qx, &sx) in offsets.iter().enumerate() {
                let u = self.shifted(psi, sx, sy, |_, ky| -i * ky);
                let v = self.shifted(psi, sx, sy, |kx, _| i * kx);
                for c in 0..nx * ny {
                    s.volume[c * nq * nq + qy * nq + qx] = (u[c], v[c]);
                }
            }
        }
        for (q, &sy) in offsets.iter().enumerate() {
            let u = self.shifted(psi, 0.0, sy, |_, ky| -i * ky);
            for j in 0..ny {
                for e in 0..=nx {
                    s.vertical[(j * (nx + 1) + e) * nq + q] = u[j * nx + e % nx];
                }
            }
        }
        for (q, &sx) in offsets.iter().enumerate() {
            let v = self.shifted(psi, sx, 0.0, |kx, _| i * kx);
            for j in 0..=ny {
                for e in 0..nx {
                    s.horizontal[(j * nx + e) * nq + q] = v[(j % ny) * nx + e];
                }
            }
        }
        s
    }

    /// Stream function at the grid vertices `[j * (nx + 1) + i]`.
    pub fn vertex_stream(&self, psi: &SpectralField) -> Vec<f64> {
        let (nx, ny) = (psi.nx, psi.ny);
        let vals = self.shifted(psi, 0.0, 0.0, |_, _| Complex64::new(1.0, 0.0));
        let mut out = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                out.push(vals[(j % ny) * nx + i % nx]);
            }
        }
        out
    }

    /// Edge-mean normal velocities from the vertex stream function.
    pub fn edge_means(&self, psi: &SpectralField) -> EdgeMeans {
        EdgeMeans::from_vertex_stream(&self.grid, &self.vertex_stream(psi))
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Stream function of periodic vorticity cell averages on `grid`.
pub fn solve_stream_function(omega_avgs: &[f64], grid: &Grid2D) -> Result<SpectralField> {
    StreamSolver::with_nodes(grid, Vec::new())?.solve(omega_avgs)
}

/// Vorticity transport problem with `1/Re` diffusion on the domain of `grid`.
pub fn vorticity_problem(grid: &Grid2D, re: f64, bounds: BoundPair) -> Result<Problem2D> {
    if !(re > 0.0) {
        return Err(Error::invalid(format!("Reynolds number must be positive, got {re}")));
    }
    let inv_re = if re.is_infinite() { 0.0 } else { 1.0 / re };
    Ok(Problem2D {
        name: "vorticity".into(),
        x_range: (grid.x.a, grid.x.b),
        y_range: (grid.y.a, grid.y.b),
        boundary: grid.x.boundary,
        convection: Convection2D::Vorticity,
        diffusion: (inv_re > 0.0).then(|| ScalarLaw::linear(inv_re)),
        initial: Arc::new(|_, _| 0.0),
        exact: None,
        bounds,
        tvb: None,
        final_time: 0.0,
        initial_subcells: 1,
    })
}

/// Time derivative of the vorticity field and its edge-mean fluxes.
pub fn ns_rhs(omega: &DGField2D, re: f64, config: &DiffusiveFluxConfig) -> Result<(Vec<f64>, FluxRecord)> {
    let problem = vorticity_problem(&omega.grid, re, omega.bounds)?;
    let options = SchemeOptions {
        diffusive: *config,
        ..SchemeOptions::new(omega.k)
    };
    let scheme = Scheme2D::new(problem, omega.grid.nx(), omega.grid.ny(), omega.k, options)?;
    scheme.rhs(&omega.coeffs, 0.0)
}
