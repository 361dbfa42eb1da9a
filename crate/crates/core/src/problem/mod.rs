//! Test problems: fluxes, diffusion, initial data, boundaries, bounds and exact solutions.

mod library;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::mesh::Boundary;

pub use library::{get_problem, list_problems, ProblemInfo};

pub type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type Fn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type Fn3 = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Named numeric problem parameters (`eps`, `m`, `re`, ...).
pub type Params = BTreeMap<String, f64>;

/// Number of samples used to bound `|u'|` of a flux or diffusion function.
pub const SPEED_SAMPLES: usize = 10_000;

/// Step of the centered difference used when no closed-form derivative is supplied.
pub const DERIVATIVE_STEP: f64 = 1e-6;

/// Global solution bounds taken from the initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

impl BoundPair {
    pub fn new(lower: f64, upper: f64) -> Self {
        assert!(lower <= upper, "bounds [{lower}, {upper}] are reversed");
        Self { lower, upper }
    }

    pub fn contains(&self, u: f64, slack: f64) -> bool {
        u >= self.lower - slack && u <= self.upper + slack
    }
}

/// A scalar function of the solution with its derivative bound on the solution range.
#[derive(Clone)]
pub struct ScalarLaw {
    value: Fn1,
    derivative: Option<Fn1>,
    max_speed: f64,
}

impl ScalarLaw {
    /// `max|u'|` is sampled over `bounds` unless `max_speed` is given.
    pub fn new(value: Fn1, derivative: Option<Fn1>, bounds: BoundPair, max_speed: Option<f64>) -> Self {
        let mut law = Self {
            value,
            derivative,
            max_speed: 0.0,
        };
        law.max_speed = max_speed.unwrap_or_else(|| law.sample_max_speed(bounds.lower, bounds.upper));
        law
    }

    pub fn linear(coefficient: f64) -> Self {
        Self {
            value: Arc::new(move |u| coefficient * u),
            derivative: Some(Arc::new(move |_| coefficient)),
            max_speed: coefficient.abs(),
        }
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        (self.value)(u)
    }

    #[inline]
    pub fn derivative(&self, u: f64) -> f64 {
        match &self.derivative {
            Some(d) => d(u),
            None => (self.eval(u + DERIVATIVE_STEP) - self.eval(u - DERIVATIVE_STEP)) / (2.0 * DERIVATIVE_STEP),
        }
    }

    pub fn max_speed(&self) -> f64 {
        self.max_speed
    }

    fn sample_max_speed(&self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return self.derivative(lo).abs();
        }
        (0..=SPEED_SAMPLES)
            .map(|i| lo + (hi - lo) * i as f64 / SPEED_SAMPLES as f64)
            .map(|u| self.derivative(u).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for ScalarLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarLaw")
            .field("max_speed", &self.max_speed)
            .field("closed_form_derivative", &self.derivative.is_some())
            .finish()
    }
}

/// Prescribed divergence-free velocity given through its stream function,
/// `(u, v) = (-psi_y, psi_x)`.
pub trait VelocityField: Send + Sync {
    fn velocity(&self, x: f64, y: f64, t: f64) -> (f64, f64);
    fn stream(&self, x: f64, y: f64, t: f64) -> f64;
}

#[derive(Clone)]
pub enum Convection2D {
    None,
    /// `F(u) = (f(u), g(u))` with global Lax-Friedrichs fluxes.
    Flux { f: ScalarLaw, g: ScalarLaw },
    /// `F(u) = u * velocity(x, y, t)`.
    Prescribed(Arc<dyn VelocityField>),
    /// Velocity recovered from the vorticity through the stream function.
    Vorticity,
}

impl fmt::Debug for Convection2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convection2D::None => write!(f, "None"),
            Convection2D::Flux { f: ff, g } => write!(f, "Flux {{ f: {ff:?}, g: {g:?} }}"),
            Convection2D::Prescribed(_) => write!(f, "Prescribed"),
            Convection2D::Vorticity => write!(f, "Vorticity"),
        }
    }
}

#[derive(Clone)]
pub struct Problem1D {
    pub name: String,
    pub domain: (f64, f64),
    pub boundary: Boundary,
    pub flux: Option<ScalarLaw>,
    pub diffusion: Option<ScalarLaw>,
    pub initial: Fn1,
    /// `u(x, t)`
    pub exact: Option<Fn2>,
    pub bounds: BoundPair,
    pub tvb: Option<f64>,
    pub final_time: f64,
    /// Sub-intervals per cell for projecting discontinuous initial data.
    pub initial_subcells: usize,
}

#[derive(Clone)]
pub struct Problem2D {
    pub name: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub boundary: Boundary,
    pub convection: Convection2D,
    /// Isotropic diffusion `div(a'(u) grad u) = lap a(u)`.
    pub diffusion: Option<ScalarLaw>,
    pub initial: Fn2,
    /// `u(x, y, t)`
    pub exact: Option<Fn3>,
    pub bounds: BoundPair,
    pub tvb: Option<f64>,
    pub final_time: f64,
    pub initial_subcells: usize,
}

#[derive(Clone)]
pub enum Problem {
    OneD(Problem1D),
    TwoD(Problem2D),
}

impl Problem {
    pub fn name(&self) -> &str {
        match self {
            Problem::OneD(p) => &p.name,
            Problem::TwoD(p) => &p.name,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Problem::OneD(_) => 1,
            Problem::TwoD(_) => 2,
        }
    }

    pub fn bounds(&self) -> BoundPair {
        match self {
            Problem::OneD(p) => p.bounds,
            Problem::TwoD(p) => p.bounds,
        }
    }

    pub fn has_exact(&self) -> bool {
        match self {
            Problem::OneD(p) => p.exact.is_some(),
            Problem::TwoD(p) => p.exact.is_some(),
        }
    }

    pub fn final_time(&self) -> f64 {
        match self {
            Problem::OneD(p) => p.final_time,
            Problem::TwoD(p) => p.final_time,
        }
    }

    pub fn tvb(&self) -> Option<f64> {
        match self {
            Problem::OneD(p) => p.tvb,
            Problem::TwoD(p) => p.tvb,
        }
    }

    pub fn into_1d(self) -> Option<Problem1D> {
        match self {
            Problem::OneD(p) => Some(p),
            Problem::TwoD(_) => None,
        }
    }

    pub fn into_2d(self) -> Option<Problem2D> {
        match self {
            Problem::TwoD(p) => Some(p),
            Problem::OneD(_) => None,
        }
    }
}

impl fmt::Debug for Problem1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem1D")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("boundary", &self.boundary)
            .field("flux", &self.flux)
            .field("diffusion", &self.diffusion)
            .field("bounds", &self.bounds)
            .finish_non_exhaustive()
    }
}

impl fmt::Debug for Problem2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem2D")
            .field("name", &self.name)
            .field("x_range", &self.x_range)
            .field("y_range", &self.y_range)
            .field("boundary", &self.boundary)
            .field("convection", &self.convection)
            .field("diffusion", &self.diffusion)
            .field("bounds", &self.bounds)
            .finish_non_exhaustive()
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::OneD(p) => p.fmt(f),
            Problem::TwoD(p) => p.fmt(f),
        }
    }
}
