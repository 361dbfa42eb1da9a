//! Gauss-Legendre rules on the reference interval [-1, 1].

use crate::basis::legendre_value_and_derivative;
use crate::error::{Error, Result};

pub const MAX_GAUSS_POINTS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral over [-1, 1].
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Composite rule: [-1, 1] split into `parts` equal pieces, each carrying this rule.
    pub fn composite(&self, parts: usize) -> QuadratureRule {
        if parts <= 1 {
            return self.clone();
        }
        let width = 2.0 / parts as f64;
        let mut nodes = Vec::with_capacity(parts * self.len());
        let mut weights = Vec::with_capacity(parts * self.len());
        for p in 0..parts {
            let mid = -1.0 + (p as f64 + 0.5) * width;
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                nodes.push(mid + 0.5 * width * x);
                weights.push(0.5 * width * w);
            }
        }
        QuadratureRule { nodes, weights }
    }
}

/// `n`-point Gauss-Legendre rule, exact for polynomials of degree `2n - 1`.
pub fn gauss_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > MAX_GAUSS_POINTS {
        return Err(Error::invalid(format!(
            "gauss rule with {n} points (supported 1..={MAX_GAUSS_POINTS})"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev guess, then Newton on P_n.
        let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_value_and_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_value_and_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = x;
        nodes[n - 1 - i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    let rule = QuadratureRule { nodes, weights };
    debug_assert!((rule.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
    debug_assert!({
        let d = 2 * n - 2;
        let exact = 2.0 / (d as f64 + 1.0);
        (rule.integrate(|x| x.powi(d as i32)) - exact).abs() < 1e-13
    });
    Ok(rule)
}
