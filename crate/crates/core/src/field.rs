//! Piecewise-polynomial DG solutions stored as modal Legendre coefficients.
//!
//! Mode 0 is the constant 1, so coefficient 0 of every cell is its average.

use crate::basis::{legendre_all, p_k_modes};
use crate::error::{Error, Result};
use crate::mesh::{Grid1D, Grid2D};
use crate::problem::{BoundPair, Fn1, Fn2, Problem1D, Problem2D};
use crate::quadrature::{gauss_rule, QuadratureRule};

/// Extra Gauss points beyond `k + 1` per sub-interval used for projection.
const PROJECTION_EXTRA_POINTS: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct DGField1D {
    pub grid: Grid1D,
    pub k: usize,
    /// `coeffs[j * (k + 1) + m]`
    pub coeffs: Vec<f64>,
    pub bounds: BoundPair,
}

impl DGField1D {
    pub fn zeros(grid: Grid1D, k: usize, bounds: BoundPair) -> Self {
        Self {
            coeffs: vec![0.0; grid.n * (k + 1)],
            grid,
            k,
            bounds,
        }
    }

    pub fn dim(&self) -> usize {
        self.k + 1
    }

    pub fn cell(&self, j: usize) -> &[f64] {
        let d = self.dim();
        &self.coeffs[j * d..(j + 1) * d]
    }

    pub fn cell_mut(&mut self, j: usize) -> &mut [f64] {
        let d = self.dim();
        &mut self.coeffs[j * d..(j + 1) * d]
    }

    pub fn average(&self, j: usize) -> f64 {
        self.coeffs[j * self.dim()]
    }

    pub fn averages(&self) -> Vec<f64> {
        self.coeffs.iter().step_by(self.dim()).copied().collect()
    }

    /// Value at reference coordinate `xi` of cell `j`.
    pub fn eval(&self, j: usize, xi: f64) -> f64 {
        let (p, _, _) = legendre_all(self.k, xi);
        self.cell(j).iter().zip(&p).map(|(c, p)| c * p).sum()
    }

    /// Value at a physical point; interface points belong to the cell on their right.
    pub fn value_at(&self, x: f64) -> f64 {
        let g = &self.grid;
        let j = (((x - g.a) / g.h).floor().max(0.0) as usize).min(g.n - 1);
        let xi = 2.0 * (x - g.center(j)) / g.h;
        self.eval(j, xi)
    }

    /// `sum_j ubar_j h`
    pub fn mass(&self) -> f64 {
        self.averages().iter().sum::<f64>() * self.grid.h
    }

    /// Quadrature L2 projection of `u0`, each cell split into `subcells` pieces.
    pub fn project(grid: Grid1D, k: usize, u0: &Fn1, subcells: usize, bounds: BoundPair) -> Result<Self> {
        let rule = projection_rule(k, subcells)?;
        let tab: Vec<_> = rule.nodes.iter().map(|&x| legendre_all(k, x).0).collect();
        let mut field = Self::zeros(grid, k, bounds);
        for j in 0..grid.n {
            let samples: Vec<f64> = rule.nodes.iter().map(|&xi| u0(grid.map(j, xi))).collect();
            let cell = field.cell_mut(j);
            for (m, c) in cell.iter_mut().enumerate() {
                let s: f64 = samples
                    .iter()
                    .zip(&rule.weights)
                    .zip(&tab)
                    .map(|((u, w), p)| w * u * p[m])
                    .sum();
                *c = 0.5 * (2 * m + 1) as f64 * s;
            }
        }
        Ok(field)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DGField2D {
    pub grid: Grid2D,
    pub k: usize,
    /// `coeffs[cell * dim + m]` with `cell = j * nx + i` and modes in total-degree order.
    pub coeffs: Vec<f64>,
    pub bounds: BoundPair,
}

impl DGField2D {
    pub fn zeros(grid: Grid2D, k: usize, bounds: BoundPair) -> Self {
        let dim = (k + 1) * (k + 2) / 2;
        Self {
            coeffs: vec![0.0; grid.cells() * dim],
            grid,
            k,
            bounds,
        }
    }

    pub fn dim(&self) -> usize {
        (self.k + 1) * (self.k + 2) / 2
    }

    pub fn cell(&self, c: usize) -> &[f64] {
        let d = self.dim();
        &self.coeffs[c * d..(c + 1) * d]
    }

    pub fn cell_mut(&mut self, c: usize) -> &mut [f64] {
        let d = self.dim();
        &mut self.coeffs[c * d..(c + 1) * d]
    }

    pub fn average(&self, c: usize) -> f64 {
        self.coeffs[c * self.dim()]
    }

    pub fn averages(&self) -> Vec<f64> {
        self.coeffs.iter().step_by(self.dim()).copied().collect()
    }

    pub fn eval(&self, c: usize, xi: f64, eta: f64) -> f64 {
        let (px, _, _) = legendre_all(self.k, xi);
        let (py, _, _) = legendre_all(self.k, eta);
        p_k_modes(self.k)
            .iter()
            .zip(self.cell(c))
            .map(|(&(a, b), v)| v * px[a] * py[b])
            .sum()
    }

    pub fn mass(&self) -> f64 {
        self.averages().iter().sum::<f64>() * self.grid.cell_area()
    }

    pub fn project(grid: Grid2D, k: usize, u0: &Fn2, subcells: usize, bounds: BoundPair) -> Result<Self> {
        let rule = projection_rule(k, subcells)?;
        let modes = p_k_modes(k);
        let tab: Vec<_> = rule.nodes.iter().map(|&x| legendre_all(k, x).0).collect();
        let mut field = Self::zeros(grid, k, bounds);
        let nq = rule.len();
        for j in 0..grid.ny() {
            for i in 0..grid.nx() {
                let mut samples = Vec::with_capacity(nq * nq);
                for &eta in &rule.nodes {
                    for &xi in &rule.nodes {
                        samples.push(u0(grid.x.map(i, xi), grid.y.map(j, eta)));
                    }
                }
                let cell = field.cell_mut(grid.cell(i, j));
                for (m, &(a, b)) in modes.iter().enumerate() {
                    let mut s = 0.0;
                    for qy in 0..nq {
                        for qx in 0..nq {
                            s += rule.weights[qx] * rule.weights[qy] * samples[qy * nq + qx]
                                * tab[qx][a]
                                * tab[qy][b];
                        }
                    }
                    cell[m] = 0.25 * ((2 * a + 1) * (2 * b + 1)) as f64 * s;
                }
            }
        }
        Ok(field)
    }
}

fn projection_rule(k: usize, subcells: usize) -> Result<QuadratureRule> {
    Ok(gauss_rule(k + 1 + PROJECTION_EXTRA_POINTS)?.composite(subcells.max(1)))
}

/// L1 and L-infinity errors against the exact solution at time `t`, sampled at
/// `k + 2` Gauss points per direction. L1 is the mean over the domain.
pub fn exact_error_1d(field: &DGField1D, problem: &Problem1D, t: f64) -> Result<(f64, f64)> {
    let exact = problem
        .exact
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("`{}` has no exact solution", problem.name)))?;
    let rule = gauss_rule(field.k + 2)?;
    let tab: Vec<_> = rule.nodes.iter().map(|&x| legendre_all(field.k, x).0).collect();
    let g = &field.grid;
    let (mut l1, mut linf) = (0.0f64, 0.0f64);
    for j in 0..g.n {
        let c = field.cell(j);
        for ((&xi, &w), p) in rule.nodes.iter().zip(&rule.weights).zip(&tab) {
            let uh: f64 = c.iter().zip(p).map(|(a, b)| a * b).sum();
            let e = (uh - exact(g.map(j, xi), t)).abs();
            l1 += w * e * 0.5 * g.h;
            linf = linf.max(e);
        }
    }
    Ok((l1 / g.length(), linf))
}

pub fn exact_error_2d(field: &DGField2D, problem: &Problem2D, t: f64) -> Result<(f64, f64)> {
    let exact = problem
        .exact
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("`{}` has no exact solution", problem.name)))?;
    let rule = gauss_rule(field.k + 2)?;
    let modes = p_k_modes(field.k);
    let tab: Vec<_> = rule.nodes.iter().map(|&x| legendre_all(field.k, x).0).collect();
    let g = &field.grid;
    let area = 0.25 * g.cell_area();
    let (mut l1, mut linf) = (0.0f64, 0.0f64);
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            let c = field.cell(g.cell(i, j));
            for (qy, &eta) in rule.nodes.iter().enumerate() {
                for (qx, &xi) in rule.nodes.iter().enumerate() {
                    let uh: f64 = modes
                        .iter()
                        .zip(c)
                        .map(|(&(a, b), v)| v * tab[qx][a] * tab[qy][b])
                        .sum();
                    let e = (uh - exact(g.x.map(i, xi), g.y.map(j, eta), t)).abs();
                    l1 += rule.weights[qx] * rule.weights[qy] * e * area;
                    linf = linf.max(e);
                }
            }
        }
    }
    Ok((l1 / (g.x.length() * g.y.length()), linf))
}
