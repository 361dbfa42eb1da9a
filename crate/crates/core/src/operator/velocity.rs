use crate::basis::Basis2D;
use crate::mesh::Grid2D;
use crate::problem::VelocityField;

/// Velocity at the quadrature points used by the 2D operator.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VelocitySamples {
    /// `(u, v)` at `[cell * nq * nq + qy * nq + qx]`.
    pub volume: Vec<(f64, f64)>,
    /// `u` at `[(j * (nx + 1) + i) * nq + q]` on vertical edges.
    pub vertical: Vec<f64>,
    /// `v` at `[(j * nx + i) * nq + q]` on horizontal edges.
    pub horizontal: Vec<f64>,
}

impl VelocitySamples {
    pub fn max_u(&self) -> f64 {
        self.volume
            .iter()
            .map(|v| v.0.abs())
            .chain(self.vertical.iter().map(|v| v.abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_v(&self) -> f64 {
        self.volume
            .iter()
            .map(|v| v.1.abs())
            .chain(self.horizontal.iter().map(|v| v.abs()))
            .fold(0.0, f64::max)
    }
}

/// Edge-mean normal velocities obtained from stream-function differences, so the
/// discrete divergence of every cell telescopes to zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeMeans {
    /// Mean `u` on the vertical edge west of cell `(i, j)`: `[j * (nx + 1) + i]`.
    pub vertical: Vec<f64>,
    /// Mean `v` on the horizontal edge south of cell `(i, j)`: `[j * nx + i]`.
    pub horizontal: Vec<f64>,
}

impl EdgeMeans {
    /// `psi[j * (nx + 1) + i]` holds the stream function at vertex `(x_{i-1/2}, y_{j-1/2})`.
    pub fn from_vertex_stream(grid: &Grid2D, psi: &[f64]) -> Self {
        let (nx, ny) = (grid.nx(), grid.ny());
        let at = |i: usize, j: usize| psi[j * (nx + 1) + i];
        let mut vertical = vec![0.0; (nx + 1) * ny];
        for j in 0..ny {
            for i in 0..=nx {
                vertical[j * (nx + 1) + i] = -(at(i, j + 1) - at(i, j)) / grid.hy();
            }
        }
        let mut horizontal = vec![0.0; nx * (ny + 1)];
        for j in 0..=ny {
            for i in 0..nx {
                horizontal[j * nx + i] = (at(i + 1, j) - at(i, j)) / grid.hx();
            }
        }
        Self { vertical, horizontal }
    }
}

pub(crate) fn sample_prescribed(
    field: &dyn VelocityField,
    grid: &Grid2D,
    basis: &Basis2D,
    t: f64,
) -> VelocitySamples {
    let (nx, ny) = (grid.nx(), grid.ny());
    let nodes = &basis.rule.nodes;
    let nq = nodes.len();
    let mut s = VelocitySamples {
        volume: Vec::with_capacity(nx * ny * nq * nq),
        vertical: Vec::with_capacity((nx + 1) * ny * nq),
        horizontal: Vec::with_capacity(nx * (ny + 1) * nq),
    };
    for j in 0..ny {
        for i in 0..nx {
            for &eta in nodes {
                for &xi in nodes {
                    s.volume.push(field.velocity(grid.x.map(i, xi), grid.y.map(j, eta), t));
                }
            }
        }
    }
    for j in 0..ny {
        for i in 0..=nx {
            let x = grid.x.interface(i);
            for &eta in nodes {
                s.vertical.push(field.velocity(x, grid.y.map(j, eta), t).0);
            }
        }
    }
    for j in 0..=ny {
        let y = grid.y.interface(j);
        for i in 0..nx {
            for &xi in nodes {
                s.horizontal.push(field.velocity(grid.x.map(i, xi), y, t).1);
            }
        }
    }
    s
}

pub(crate) fn prescribed_vertex_stream(field: &dyn VelocityField, grid: &Grid2D, t: f64) -> Vec<f64> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut psi = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            psi.push(field.stream(grid.x.interface(i), grid.y.interface(j), t));
        }
    }
    psi
}
