use std::f64::consts::PI;
use std::sync::Arc;

use super::{
    BoundPair, Convection2D, Fn1, Params, Problem, Problem1D, Problem2D, ScalarLaw,
    VelocityField,
};
use crate::error::{Error, Result};
use crate::mesh::Boundary;

/// Sub-cells used to project discontinuous initial data.
const STEP_SUBCELLS: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct ProblemInfo {
    pub name: &'static str,
    pub dimension: usize,
    pub params: &'static [(&'static str, f64)],
    pub summary: &'static str,
}

const REGISTRY: &[ProblemInfo] = &[
    ProblemInfo {
        name: "linear-1d",
        dimension: 1,
        params: &[("eps", 1e-4)],
        summary: "u_t + u_x = eps u_xx, u0 = sin^4 x, periodic [0, 2pi]",
    },
    ProblemInfo {
        name: "jiangshu-advection",
        dimension: 1,
        params: &[],
        summary: "u_t + u_x = 0 with Gaussians, square, triangle and ellipse, periodic [-1, 1]",
    },
    ProblemInfo {
        name: "porous-medium",
        dimension: 1,
        params: &[("m", 2.0)],
        summary: "u_t = (u^m)_xx from the Barenblatt profile at t = 1, zero boundary on [-6, 6]",
    },
    ProblemInfo {
        name: "buckley-leverett-1d",
        dimension: 1,
        params: &[("eps", 0.01)],
        summary: "u_t + f(u)_x = eps (nu(u) u_x)_x, Dirichlet u(0) = 1, u(1) = 0",
    },
    ProblemInfo {
        name: "linear-2d",
        dimension: 2,
        params: &[("eps", 1e-4)],
        summary: "u_t + u_x + u_y = eps lap u, u0 = sin^4(x + y), periodic [0, 2pi]^2",
    },
    ProblemInfo {
        name: "porous-medium-2d",
        dimension: 2,
        params: &[],
        summary: "u_t = lap(u^2) from a square indicator, periodic [-1, 1]^2",
    },
    ProblemInfo {
        name: "buckley-leverett-2d",
        dimension: 2,
        params: &[("eps", 0.01)],
        summary: "Buckley-Leverett with gravity in y, disc initial data, periodic [-1.5, 1.5]^2",
    },
    ProblemInfo {
        name: "rigid-rotation",
        dimension: 2,
        params: &[("inv_re", 0.0)],
        summary: "rigid body rotation of slotted disk, cone and hump, zero boundary on [-pi, pi]^2",
    },
    ProblemInfo {
        name: "swirling",
        dimension: 2,
        params: &[("inv_re", 0.0), ("period", 2.0 * PI)],
        summary: "swirling deformation flow of slotted disk, cone and hump, periodic [-pi, pi]^2",
    },
    ProblemInfo {
        name: "ns-accuracy",
        dimension: 2,
        params: &[("re", 100.0)],
        summary: "vorticity-stream Navier-Stokes, omega = -2 sin x sin y exp(-2t/Re), periodic [0, 2pi]^2",
    },
    ProblemInfo {
        name: "vortex-patch",
        dimension: 2,
        params: &[("re", 100.0)],
        summary: "vorticity-stream Navier-Stokes with two opposite vortex patches, periodic [0, 2pi]^2",
    },
];

pub fn list_problems() -> &'static [ProblemInfo] {
    REGISTRY
}

/// Builds a registered problem; unspecified parameters take their defaults.
pub fn get_problem(name: &str, params: &Params) -> Result<Problem> {
    let info = REGISTRY
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::NotFound(name.to_string()))?;
    for key in params.keys() {
        if !info.params.iter().any(|(k, _)| k == key) {
            return Err(Error::invalid(format!(
                "problem `{name}` has no parameter `{key}`"
            )));
        }
    }
    let get = |key: &str| -> f64 {
        params.get(key).copied().unwrap_or_else(|| {
            info.params
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .unwrap()
        })
    };
    match name {
        "linear-1d" => linear_1d(get("eps")),
        "jiangshu-advection" => Ok(four_shapes()),
        "porous-medium" => porous_medium(get("m")),
        "buckley-leverett-1d" => buckley_leverett_1d(get("eps")),
        "linear-2d" => linear_2d(get("eps")),
        "porous-medium-2d" => Ok(porous_medium_2d()),
        "buckley-leverett-2d" => buckley_leverett_2d(get("eps")),
        "rigid-rotation" => rigid_rotation(get("inv_re")),
        "swirling" => swirling(get("inv_re"), get("period")),
        "ns-accuracy" => ns_accuracy(get("re")),
        "vortex-patch" => vortex_patch(get("re")),
        _ => unreachable!(),
    }
}

fn non_negative(name: &str, v: f64) -> Result<f64> {
    if !(v >= 0.0 && v.is_finite()) {
        return Err(Error::invalid(format!("{name} must be a finite non-negative number, got {v}")));
    }
    Ok(v)
}

fn linear_diffusion(eps: f64) -> Option<ScalarLaw> {
    (eps > 0.0).then(|| ScalarLaw::linear(eps))
}

fn linear_1d(eps: f64) -> Result<Problem> {
    let eps = non_negative("eps", eps)?;
    Ok(Problem::OneD(Problem1D {
        name: "linear-1d".into(),
        domain: (0.0, 2.0 * PI),
        boundary: Boundary::Periodic,
        flux: Some(ScalarLaw::linear(1.0)),
        diffusion: linear_diffusion(eps),
        initial: Arc::new(|x: f64| x.sin().powi(4)),
        exact: Some(Arc::new(move |x: f64, t: f64| {
            0.375 - 0.5 * (-4.0 * eps * t).exp() * (2.0 * (x - t)).cos()
                + 0.125 * (-16.0 * eps * t).exp() * (4.0 * (x - t)).cos()
        })),
        bounds: BoundPair::new(0.0, 1.0),
        tvb: None,
        final_time: 1.0,
        initial_subcells: 1,
    }))
}

/// Initial profile of the narrow-feature advection test on [-1, 1].
pub(crate) fn four_shapes_profile(x: f64) -> f64 {
    const A: f64 = 0.5;
    const Z: f64 = -0.7;
    const DELTA: f64 = 0.005;
    const GAMMA: f64 = 10.0;
    let beta = std::f64::consts::LN_2 / (36.0 * DELTA * DELTA);
    let g = |x: f64, z: f64| (-beta * (x - z) * (x - z)).exp();
    let f = |x: f64, a: f64| (1.0 - GAMMA * GAMMA * (x - a) * (x - a)).max(0.0).sqrt();
    if (-0.8..=-0.6).contains(&x) {
        (g(x, Z - DELTA) + g(x, Z + DELTA) + 4.0 * g(x, Z)) / 6.0
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (f(x, A - DELTA) + f(x, A + DELTA) + 4.0 * f(x, A)) / 6.0
    } else {
        0.0
    }
}

fn four_shapes() -> Problem {
    Problem::OneD(Problem1D {
        name: "jiangshu-advection".into(),
        domain: (-1.0, 1.0),
        boundary: Boundary::Periodic,
        flux: Some(ScalarLaw::linear(1.0)),
        diffusion: None,
        initial: Arc::new(four_shapes_profile),
        exact: Some(Arc::new(|x: f64, t: f64| {
            four_shapes_profile((x - t + 1.0).rem_euclid(2.0) - 1.0)
        })),
        bounds: BoundPair::new(0.0, 1.0),
        tvb: Some(10.0),
        final_time: 8.0,
        initial_subcells: STEP_SUBCELLS,
    })
}

/// Barenblatt solution of `u_t = (u^m)_xx`.
pub fn barenblatt(m: f64, x: f64, t: f64) -> f64 {
    let s = 1.0 / (m + 1.0);
    let core = 1.0 - s * (m - 1.0) / (2.0 * m) * x * x / t.powf(2.0 * s);
    if core <= 0.0 {
        0.0
    } else {
        t.powf(-s) * core.powf(1.0 / (m - 1.0))
    }
}

/// Odd extension `|u|^(m-1) u` keeps the diffusion monotone for negative traces.
fn power_diffusion(m: f64, bounds: BoundPair) -> ScalarLaw {
    let value: Fn1 = Arc::new(move |u: f64| u.abs().powf(m - 1.0) * u);
    let derivative: Fn1 = Arc::new(move |u: f64| m * u.abs().powf(m - 1.0));
    let peak = bounds.lower.abs().max(bounds.upper.abs());
    ScalarLaw::new(value, Some(derivative), bounds, Some(m * peak.powf(m - 1.0)))
}

fn porous_medium(m: f64) -> Result<Problem> {
    if !(m > 1.0 && m.is_finite()) {
        return Err(Error::invalid(format!("porous medium exponent must exceed 1, got {m}")));
    }
    let upper = barenblatt(m, 0.0, 1.0);
    let bounds = BoundPair::new(0.0, upper);
    Ok(Problem::OneD(Problem1D {
        name: "porous-medium".into(),
        domain: (-6.0, 6.0),
        boundary: Boundary::CompactZero,
        flux: None,
        diffusion: Some(power_diffusion(m, bounds)),
        initial: Arc::new(move |x| barenblatt(m, x, 1.0)),
        exact: Some(Arc::new(move |x, t| barenblatt(m, x, t + 1.0))),
        bounds,
        tvb: Some(1.0),
        final_time: 2.0,
        initial_subcells: 1,
    }))
}

/// S-shaped Buckley-Leverett flux and its derivative.
pub(crate) fn bl_flux() -> (Fn1, Fn1) {
    let f: Fn1 = Arc::new(|u: f64| u * u / (u * u + (1.0 - u) * (1.0 - u)));
    let df: Fn1 = Arc::new(|u: f64| {
        let d = u * u + (1.0 - u) * (1.0 - u);
        2.0 * u * (1.0 - u) / (d * d)
    });
    (f, df)
}

fn bl_diffusion(eps: f64, bounds: BoundPair) -> ScalarLaw {
    // a'(u) = 4 eps u (1 - u) on [0, 1], zero outside
    let value: Fn1 = Arc::new(move |u: f64| {
        let u = u.clamp(0.0, 1.0);
        eps * (2.0 * u * u - 4.0 * u * u * u / 3.0)
    });
    let derivative: Fn1 = Arc::new(move |u: f64| {
        if (0.0..=1.0).contains(&u) {
            4.0 * eps * u * (1.0 - u)
        } else {
            0.0
        }
    });
    ScalarLaw::new(value, Some(derivative), bounds, None)
}

fn buckley_leverett_1d(eps: f64) -> Result<Problem> {
    let eps = non_negative("eps", eps)?;
    let bounds = BoundPair::new(0.0, 1.0);
    let (f, df) = bl_flux();
    Ok(Problem::OneD(Problem1D {
        name: "buckley-leverett-1d".into(),
        domain: (0.0, 1.0),
        boundary: Boundary::Dirichlet { left: 1.0, right: 0.0 },
        flux: Some(ScalarLaw::new(f, Some(df), bounds, None)),
        diffusion: (eps > 0.0).then(|| bl_diffusion(eps, bounds)),
        initial: Arc::new(|x: f64| if x <= 1.0 / 3.0 { 1.0 - 3.0 * x } else { 0.0 }),
        exact: None,
        bounds,
        tvb: Some(10.0),
        final_time: 0.2,
        initial_subcells: 1,
    }))
}

fn linear_2d(eps: f64) -> Result<Problem> {
    let eps = non_negative("eps", eps)?;
    Ok(Problem::TwoD(Problem2D {
        name: "linear-2d".into(),
        x_range: (0.0, 2.0 * PI),
        y_range: (0.0, 2.0 * PI),
        boundary: Boundary::Periodic,
        convection: Convection2D::Flux {
            f: ScalarLaw::linear(1.0),
            g: ScalarLaw::linear(1.0),
        },
        diffusion: linear_diffusion(eps),
        initial: Arc::new(|x: f64, y: f64| (x + y).sin().powi(4)),
        exact: Some(Arc::new(move |x: f64, y: f64, t: f64| {
            let s = x + y - 2.0 * t;
            0.375 - 0.5 * (-8.0 * eps * t).exp() * (2.0 * s).cos()
                + 0.125 * (-32.0 * eps * t).exp() * (4.0 * s).cos()
        })),
        bounds: BoundPair::new(0.0, 1.0),
        tvb: None,
        final_time: 0.5,
        initial_subcells: 1,
    }))
}

fn porous_medium_2d() -> Problem {
    let bounds = BoundPair::new(0.0, 1.0);
    Problem::TwoD(Problem2D {
        name: "porous-medium-2d".into(),
        x_range: (-1.0, 1.0),
        y_range: (-1.0, 1.0),
        boundary: Boundary::Periodic,
        convection: Convection2D::None,
        diffusion: Some(power_diffusion(2.0, bounds)),
        initial: Arc::new(|x: f64, y: f64| {
            if x.abs() <= 0.5 && y.abs() <= 0.5 {
                1.0
            } else {
                0.0
            }
        }),
        exact: None,
        bounds,
        tvb: Some(50.0),
        final_time: 0.005,
        initial_subcells: STEP_SUBCELLS,
    })
}

fn buckley_leverett_2d(eps: f64) -> Result<Problem> {
    let eps = non_negative("eps", eps)?;
    let bounds = BoundPair::new(0.0, 1.0);
    let (f, df) = bl_flux();
    let (f2, df2) = (f.clone(), df.clone());
    let g: Fn1 = Arc::new(move |u: f64| f2(u) * (1.0 - 5.0 * (1.0 - u) * (1.0 - u)));
    let f3 = f.clone();
    let dg: Fn1 = Arc::new(move |u: f64| {
        let w = 1.0 - 5.0 * (1.0 - u) * (1.0 - u);
        df2(u) * w + f3(u) * 10.0 * (1.0 - u)
    });
    Ok(Problem::TwoD(Problem2D {
        name: "buckley-leverett-2d".into(),
        x_range: (-1.5, 1.5),
        y_range: (-1.5, 1.5),
        boundary: Boundary::Periodic,
        convection: Convection2D::Flux {
            f: ScalarLaw::new(f, Some(df), bounds, None),
            g: ScalarLaw::new(g, Some(dg), bounds, None),
        },
        diffusion: linear_diffusion(eps),
        initial: Arc::new(|x: f64, y: f64| if x * x + y * y < 0.5 { 1.0 } else { 0.0 }),
        exact: None,
        bounds,
        tvb: Some(50.0),
        final_time: 0.5,
        initial_subcells: STEP_SUBCELLS,
    }))
}

/// Slotted disk at (pi/2, 0), cone at (-pi/2, 0) and cosine hump at (0, -pi/2),
/// each of radius 0.3 pi.
pub fn rotation_profile(x: f64, y: f64) -> f64 {
    let r0 = 0.3 * PI;
    let dist = |cx: f64, cy: f64| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt();
    let (dx, dy) = (0.5 * PI, 0.0);
    if dist(dx, dy) <= r0 {
        let in_slot = (x - dx).abs() < 0.05 * PI && y < dy + 2.0 * r0 / 3.0;
        return if in_slot { 0.0 } else { 1.0 };
    }
    let rc = dist(-0.5 * PI, 0.0);
    if rc <= r0 {
        return 1.0 - rc / r0;
    }
    let rh = dist(0.0, -0.5 * PI);
    if rh <= r0 {
        return 0.25 * (1.0 + (PI * rh / r0).cos());
    }
    0.0
}

struct RigidRotation;

impl VelocityField for RigidRotation {
    fn velocity(&self, x: f64, y: f64, _t: f64) -> (f64, f64) {
        (-y, x)
    }

    fn stream(&self, x: f64, y: f64, _t: f64) -> f64 {
        0.5 * (x * x + y * y)
    }
}

struct Swirling {
    period: f64,
}

impl Swirling {
    fn g(&self, t: f64) -> f64 {
        (PI * t / self.period).cos() / PI
    }
}

impl VelocityField for Swirling {
    fn velocity(&self, x: f64, y: f64, t: f64) -> (f64, f64) {
        let g = self.g(t);
        let cx = (0.5 * x).cos();
        let cy = (0.5 * y).cos();
        (-cx * cx * y.sin() * g, x.sin() * cy * cy * g)
    }

    fn stream(&self, x: f64, y: f64, t: f64) -> f64 {
        let cx = (0.5 * x).cos();
        -self.g(t) * (cx * cx * y.cos() + 0.5 * x.cos())
    }
}

fn transport_problem(
    name: &str,
    boundary: Boundary,
    velocity: Arc<dyn VelocityField>,
    inv_re: f64,
) -> Result<Problem> {
    let inv_re = non_negative("inv_re", inv_re)?;
    Ok(Problem::TwoD(Problem2D {
        name: name.into(),
        x_range: (-PI, PI),
        y_range: (-PI, PI),
        boundary,
        convection: Convection2D::Prescribed(velocity),
        diffusion: linear_diffusion(inv_re),
        initial: Arc::new(rotation_profile),
        exact: None,
        bounds: BoundPair::new(0.0, 1.0),
        tvb: Some(50.0),
        final_time: 0.1,
        initial_subcells: STEP_SUBCELLS,
    }))
}

fn rigid_rotation(inv_re: f64) -> Result<Problem> {
    transport_problem("rigid-rotation", Boundary::CompactZero, Arc::new(RigidRotation), inv_re)
}

fn swirling(inv_re: f64, period: f64) -> Result<Problem> {
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::invalid(format!("swirling period must be positive, got {period}")));
    }
    transport_problem("swirling", Boundary::Periodic, Arc::new(Swirling { period }), inv_re)
}

fn reynolds(re: f64) -> Result<f64> {
    if !(re > 0.0) {
        return Err(Error::invalid(format!("Reynolds number must be positive, got {re}")));
    }
    Ok(if re.is_infinite() { 0.0 } else { 1.0 / re })
}

fn ns_accuracy(re: f64) -> Result<Problem> {
    let inv_re = reynolds(re)?;
    Ok(Problem::TwoD(Problem2D {
        name: "ns-accuracy".into(),
        x_range: (0.0, 2.0 * PI),
        y_range: (0.0, 2.0 * PI),
        boundary: Boundary::Periodic,
        convection: Convection2D::Vorticity,
        diffusion: linear_diffusion(inv_re),
        initial: Arc::new(|x: f64, y: f64| -2.0 * x.sin() * y.sin()),
        exact: Some(Arc::new(move |x: f64, y: f64, t: f64| {
            -2.0 * x.sin() * y.sin() * (-2.0 * t * inv_re).exp()
        })),
        bounds: BoundPair::new(-2.0, 2.0),
        tvb: None,
        final_time: 0.1,
        initial_subcells: 1,
    }))
}

pub(crate) fn vortex_patch_profile(x: f64, y: f64) -> f64 {
    let in_x = (0.5 * PI..=1.5 * PI).contains(&x);
    if in_x && (0.25 * PI..=0.75 * PI).contains(&y) {
        -1.0
    } else if in_x && (1.25 * PI..=1.75 * PI).contains(&y) {
        1.0
    } else {
        0.0
    }
}

fn vortex_patch(re: f64) -> Result<Problem> {
    let inv_re = reynolds(re)?;
    Ok(Problem::TwoD(Problem2D {
        name: "vortex-patch".into(),
        x_range: (0.0, 2.0 * PI),
        y_range: (0.0, 2.0 * PI),
        boundary: Boundary::Periodic,
        convection: Convection2D::Vorticity,
        diffusion: linear_diffusion(inv_re),
        initial: Arc::new(vortex_patch_profile),
        exact: None,
        bounds: BoundPair::new(-1.0, 1.0),
        tvb: None,
        final_time: 0.1,
        initial_subcells: STEP_SUBCELLS,
    }))
}
