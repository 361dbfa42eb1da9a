//! Uniform structured grids in one and two dimensions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Treatment of the two ends of a grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Boundary {
    Periodic,
    /// Ghost cells hold the given constant states; ghost derivatives are zero.
    Dirichlet { left: f64, right: f64 },
    /// Zero ghost states, for solutions with compact support.
    CompactZero,
}

impl Boundary {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic)
    }

    /// Ghost state beyond the left (`false`) or right (`true`) end, `None` when periodic.
    pub fn ghost(&self, right: bool) -> Option<f64> {
        match *self {
            Boundary::Periodic => None,
            Boundary::Dirichlet { left, right: r } => Some(if right { r } else { left }),
            Boundary::CompactZero => Some(0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub h: f64,
    pub boundary: Boundary,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n: usize, boundary: Boundary) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("grid needs at least one cell"));
        }
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::invalid(format!("empty domain [{a}, {b}]")));
        }
        Ok(Self {
            a,
            b,
            n,
            h: (b - a) / n as f64,
            boundary,
        })
    }

    /// Coordinate of interface `i`, `0 <= i <= n`. Interface `n` is `b` exactly.
    pub fn interface(&self, i: usize) -> f64 {
        if i == self.n {
            self.b
        } else {
            self.a + i as f64 * self.h
        }
    }

    pub fn interfaces(&self) -> Vec<f64> {
        (0..=self.n).map(|i| self.interface(i)).collect()
    }

    pub fn center(&self, j: usize) -> f64 {
        self.a + (j as f64 + 0.5) * self.h
    }

    /// Physical coordinate of reference point `xi` in cell `j`.
    pub fn map(&self, j: usize, xi: f64) -> f64 {
        self.center(j) + 0.5 * self.h * xi
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }
}

/// Tensor product of two axis layouts; cell `(i, j)` is stored at `j * nx + i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y }
    }

    pub fn square(lo: f64, hi: f64, n: usize, boundary: Boundary) -> Result<Self> {
        let axis = Grid1D::new(lo, hi, n, boundary)?;
        Ok(Self { x: axis, y: axis })
    }

    pub fn nx(&self) -> usize {
        self.x.n
    }

    pub fn ny(&self) -> usize {
        self.y.n
    }

    pub fn hx(&self) -> f64 {
        self.x.h
    }

    pub fn hy(&self) -> f64 {
        self.y.h
    }

    pub fn cells(&self) -> usize {
        self.x.n * self.y.n
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        j * self.x.n + i
    }

    pub fn cell_area(&self) -> f64 {
        self.x.h * self.y.h
    }

    pub fn is_periodic(&self) -> bool {
        self.x.boundary.is_periodic() && self.y.boundary.is_periodic()
    }
}

pub fn build_grid_1d(a: f64, b: f64, n: usize, boundary: Boundary) -> Result<Grid1D> {
    Grid1D::new(a, b, n, boundary)
}
