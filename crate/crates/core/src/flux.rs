//! Numerical fluxes at cell interfaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::ScalarLaw;

/// Jump below which `[a(u)] / [u]` is replaced by `a'` at the trace midpoint.
pub const DEFAULT_JUMP_TOLERANCE: f64 = 1e-12;

/// Global Lax-Friedrichs flux `(f(u-) + f(u+)) / 2 - alpha (u+ - u-) / 2`.
#[inline]
pub fn convective_flux(u_minus: f64, u_plus: f64, f: &ScalarLaw, alpha: f64) -> f64 {
    0.5 * (f.eval(u_minus) + f.eval(u_plus)) - 0.5 * alpha * (u_plus - u_minus)
}

/// Where the penalty sits in the 1D diffusive flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FluxForm {
    /// `r u_x^- + (alpha / h) [a(u)]`
    #[default]
    Standard,
    /// `r (u_x^- + (alpha / h) [a(u)])`
    Printed,
}

impl std::str::FromStr for FluxForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(FluxForm::Standard),
            "printed" => Ok(FluxForm::Printed),
            _ => Err(Error::invalid(format!("flux form `{s}` (expected standard or printed)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusiveFluxConfig {
    /// Penalty constant.
    pub alpha: f64,
    pub form: FluxForm,
    /// Jump tolerance for the `[a(u)] / [u]` ratio.
    pub tau: f64,
}

impl DiffusiveFluxConfig {
    /// `alpha = 1` for `P^1`, `10` otherwise.
    pub fn for_degree(k: usize) -> Self {
        Self {
            alpha: if k <= 1 { 1.0 } else { 10.0 },
            form: FluxForm::Standard,
            tau: DEFAULT_JUMP_TOLERANCE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::invalid(format!("penalty alpha must be positive, got {}", self.alpha)));
        }
        if !(self.tau > 0.0) {
            return Err(Error::invalid(format!("jump tolerance must be positive, got {}", self.tau)));
        }
        Ok(())
    }
}

/// `(tilde_flux, hat_a)` at one interface, where `tilde_flux` approximates `a(u)_x`
/// and `hat_a = a(u+)`.
#[inline]
pub fn diffusive_fluxes_1d(
    u_minus: f64,
    u_plus: f64,
    ux_minus: f64,
    a: &ScalarLaw,
    config: &DiffusiveFluxConfig,
    h: f64,
) -> (f64, f64) {
    let a_minus = a.eval(u_minus);
    let a_plus = a.eval(u_plus);
    let jump_u = u_plus - u_minus;
    let jump_a = a_plus - a_minus;
    let r = if jump_u.abs() < config.tau {
        a.derivative(0.5 * (u_minus + u_plus))
    } else {
        jump_a / jump_u
    };
    let penalty = config.alpha / h * jump_a;
    let tilde = match config.form {
        FluxForm::Standard => r * ux_minus + penalty,
        FluxForm::Printed => r * (ux_minus + penalty),
    };
    (tilde, a_plus)
}

/// Monotone first-order flux: Lax-Friedrichs for `f` minus a centered difference of `a`.
#[inline]
pub fn first_order_flux_1d(
    ubar_left: f64,
    ubar_right: f64,
    flux: Option<&ScalarLaw>,
    diffusion: Option<&ScalarLaw>,
    h: f64,
) -> f64 {
    let conv = flux.map_or(0.0, |f| convective_flux(ubar_left, ubar_right, f, f.max_speed()));
    let diff = diffusion.map_or(0.0, |a| (a.eval(ubar_right) - a.eval(ubar_left)) / h);
    conv - diff
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{BoundPair, Fn1};
    use std::sync::Arc;

    fn square() -> ScalarLaw {
        let v: Fn1 = Arc::new(|u| u * u);
        let d: Fn1 = Arc::new(|u| 2.0 * u);
        ScalarLaw::new(v, Some(d), BoundPair::new(0.0, 1.0), None)
    }

    fn standard(alpha: f64) -> DiffusiveFluxConfig {
        DiffusiveFluxConfig {
            alpha,
            form: FluxForm::Standard,
            tau: DEFAULT_JUMP_TOLERANCE,
        }
    }

    #[test]
    fn linear_lf_is_upwind() {
        let f = ScalarLaw::linear(1.0);
        assert!((convective_flux(0.3, 0.9, &f, 1.0) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn lf_consistency() {
        let f = square();
        for &u in &[0.0, 0.3, 0.77] {
            assert_eq!(convective_flux(u, u, &f, 3.0), f.eval(u));
        }
    }

    #[test]
    fn buckley_leverett_lf() {
        let bl = |u: f64| u * u / (u * u + (1.0 - u) * (1.0 - u));
        let dbl = |u: f64| {
            let d = u * u + (1.0 - u) * (1.0 - u);
            2.0 * u * (1.0 - u) / (d * d)
        };
        let alpha = (0..=1_000_000).map(|i| dbl(i as f64 / 1e6).abs()).fold(0.0, f64::max);
        let law = ScalarLaw::new(Arc::new(bl), None, BoundPair::new(0.0, 1.0), Some(alpha));
        let expect = 0.5 * (bl(0.2) + bl(0.8)) - 0.5 * alpha * 0.6;
        assert!((convective_flux(0.2, 0.8, &law, alpha) - expect).abs() < 1e-15);
        assert!((alpha - 2.0).abs() < 1e-9);
    }

    #[test]
    fn linear_diffusion_zero_jump() {
        let a = ScalarLaw::linear(1e-4);
        let (tilde, hat) = diffusive_fluxes_1d(0.5, 0.5, 1.0, &a, &standard(10.0), 0.1);
        assert!((tilde - 1e-4).abs() < 1e-18);
        assert!((hat - 5e-5).abs() < 1e-18);
    }

    #[test]
    fn continuous_trace_uses_derivative() {
        let (tilde, hat) = diffusive_fluxes_1d(1.0, 1.0, 0.37, &square(), &standard(10.0), 0.1);
        assert!((tilde - 0.74).abs() < 1e-15);
        assert_eq!(hat, 1.0);
    }

    #[test]
    fn fallback_without_closed_form_derivative() {
        let a = ScalarLaw::new(Arc::new(|u| u * u), None, BoundPair::new(0.0, 1.0), None);
        let (tilde, _) = diffusive_fluxes_1d(1.0, 1.0, 0.5, &a, &standard(10.0), 0.1);
        assert!((tilde - 1.0).abs() < 1e-8);
    }

    #[test]
    fn standard_and_printed_forms() {
        let a = square();
        let (std_flux, hat) = diffusive_fluxes_1d(0.2, 0.4, 0.1, &a, &standard(10.0), 0.15);
        let r = (0.16 - 0.04) / 0.2;
        assert!((std_flux - (r * 0.1 + 10.0 / 0.15 * 0.12)).abs() < 1e-13);
        assert!((std_flux - 8.06).abs() < 1e-12);
        assert!((hat - 0.16).abs() < 1e-15);
        let printed = DiffusiveFluxConfig {
            form: FluxForm::Printed,
            ..standard(10.0)
        };
        let (p, _) = diffusive_fluxes_1d(0.2, 0.4, 0.1, &a, &printed, 0.15);
        assert!((p - r * (0.1 + 10.0 / 0.15 * 0.12)).abs() < 1e-13);
    }

    #[test]
    fn first_order_flux_cases() {
        let a = square();
        assert!((first_order_flux_1d(1.0, 0.0, None, Some(&a), 0.15) - 1.0 / 0.15).abs() < 1e-13);
        let f = ScalarLaw::linear(1.0);
        let eps = ScalarLaw::linear(1e-4);
        let h = 0.1;
        let v = first_order_flux_1d(0.3, 0.8, Some(&f), Some(&eps), h);
        assert!((v - (0.3 - 1e-4 * 0.5 / h)).abs() < 1e-15);
        assert_eq!(first_order_flux_1d(0.4, 0.4, Some(&f), Some(&a), h), 0.4);
    }

    #[test]
    fn form_parsing() {
        assert_eq!("printed".parse::<FluxForm>().unwrap(), FluxForm::Printed);
        assert!("other".parse::<FluxForm>().is_err());
    }
}
