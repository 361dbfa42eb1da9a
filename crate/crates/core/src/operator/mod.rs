//! Semi-discrete direct DG operators and the first-order fluxes paired with them.

mod one_d;
mod two_d;
mod velocity;

use serde::{Deserialize, Serialize};

use crate::flux::DiffusiveFluxConfig;

pub use one_d::{semidiscrete_rhs_1d, Scheme1D};
pub use two_d::{semidiscrete_rhs_2d, Scheme2D};
pub use velocity::{EdgeMeans, VelocitySamples};

/// Cell-average interface fluxes.
///
/// 1D: `x[i]` at interface `i = 0..=n`. 2D: `x[j * (nx + 1) + i]` is the mean flux
/// through the vertical edge west of cell `(i, j)` and `y[j * nx + i]` the mean flux
/// through the horizontal edge south of it. With periodic boundaries the first and
/// last entries of a line hold the same value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FluxRecord {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl FluxRecord {
    pub fn zeros_1d(n: usize) -> Self {
        Self {
            x: vec![0.0; n + 1],
            y: Vec::new(),
        }
    }

    pub fn zeros_2d(nx: usize, ny: usize) -> Self {
        Self {
            x: vec![0.0; (nx + 1) * ny],
            y: vec![0.0; nx * (ny + 1)],
        }
    }

    pub fn zeros_like(&self) -> Self {
        Self {
            x: vec![0.0; self.x.len()],
            y: vec![0.0; self.y.len()],
        }
    }

    /// `self += w * other`
    pub fn add_scaled(&mut self, w: f64, other: &FluxRecord) {
        assert_eq!(self.x.len(), other.x.len());
        assert_eq!(self.y.len(), other.y.len());
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a += w * b;
        }
        for (a, b) in self.y.iter_mut().zip(&other.y) {
            *a += w * b;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().chain(&self.y).all(|v| v.is_finite())
    }
}

/// Switches shared by the 1D and 2D schemes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeOptions {
    pub mpp: bool,
    /// TVB parameter `M`; `None` disables the moment limiter.
    pub tvb: Option<f64>,
    pub diffusive: DiffusiveFluxConfig,
}

impl SchemeOptions {
    /// MPP on, TVB off, default penalty for degree `k`.
    pub fn new(k: usize) -> Self {
        Self {
            mpp: true,
            tvb: None,
            diffusive: DiffusiveFluxConfig::for_degree(k),
        }
    }

    pub fn with_mpp(mut self, on: bool) -> Self {
        self.mpp = on;
        self
    }

    pub fn with_tvb(mut self, m: Option<f64>) -> Self {
        self.tvb = m;
        self
    }
}
