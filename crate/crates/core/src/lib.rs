//! Discontinuous Galerkin solvers for scalar convection-diffusion equations in one
//! and two space dimensions with a parametrized maximum-principle-preserving flux
//! limiter on the cell averages.
//!
//! The usual entry points are [`problem::get_problem`] to pick a test case,
//! [`Scheme1D`]/[`Scheme2D`] to discretize it and [`time::evolve`] to advance it.
//! [`harness`] wraps all of this into reproducible runs with JSON/CSV output.

pub mod basis;
pub mod error;
pub mod field;
pub mod flux;
pub mod harness;
pub mod incompressible;
pub mod limiter;
pub mod mesh;
pub mod operator;
pub mod problem;
pub mod quadrature;
pub mod time;

pub use error::{Error, Result};
pub use field::{DGField1D, DGField2D};
pub use mesh::{Boundary, Grid1D, Grid2D};
pub use operator::{FluxRecord, Scheme1D, Scheme2D, SchemeOptions};
pub use problem::{get_problem, list_problems, BoundPair, Params, Problem};
pub use time::{evolve, CflConfig, Discretization, RunStats};
