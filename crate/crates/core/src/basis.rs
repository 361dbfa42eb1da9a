//! Modal Legendre bases on reference cells.
//!
//! Mode `m` in 1D is the unnormalized Legendre polynomial `P_m` on [-1, 1], so
//! `P_0 = 1` and the mode-0 coefficient of a cell polynomial is its average.
//! In 2D the total-degree space `P^k` is spanned by `P_a(xi) P_b(eta)` with
//! `a + b <= k`, ordered by total degree and then by `b`.

use crate::error::{Error, Result};
use crate::quadrature::{gauss_rule, QuadratureRule};

pub const MAX_DEGREE: usize = 6;

/// Mode values and first derivatives at one reference point.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreValues {
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
}

/// Values and first derivatives of `P_0..=P_k` at `x`.
pub fn legendre_eval(k: usize, x: f64) -> LegendreValues {
    let (values, derivatives, _) = legendre_all(k, x);
    LegendreValues {
        values,
        derivatives,
    }
}

/// Values, first and second derivatives of `P_0..=P_k` at `x`.
pub fn legendre_all(k: usize, x: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut p = vec![0.0; k + 1];
    let mut d1 = vec![0.0; k + 1];
    let mut d2 = vec![0.0; k + 1];
    p[0] = 1.0;
    if k >= 1 {
        p[1] = x;
        d1[1] = 1.0;
    }
    for n in 1..k {
        let nf = n as f64;
        p[n + 1] = ((2.0 * nf + 1.0) * x * p[n] - nf * p[n - 1]) / (nf + 1.0);
        d1[n + 1] = d1[n - 1] + (2.0 * nf + 1.0) * p[n];
        d2[n + 1] = d2[n - 1] + (2.0 * nf + 1.0) * d1[n];
    }
    (p, d1, d2)
}

pub(crate) fn legendre_value_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (p, d, _) = legendre_all(n, x);
    (p[n], d[n])
}

fn check_degree(k: usize) -> Result<()> {
    if k > MAX_DEGREE {
        return Err(Error::invalid(format!(
            "polynomial degree {k} exceeds {MAX_DEGREE}"
        )));
    }
    Ok(())
}

/// Tabulated 1D basis with a `k + 1` point Gauss rule.
#[derive(Debug, Clone)]
pub struct Basis1D {
    pub k: usize,
    pub rule: QuadratureRule,
    /// `phi[q * dim + m]`
    pub phi: Vec<f64>,
    pub dphi: Vec<f64>,
    pub d2phi: Vec<f64>,
    /// Mode values and derivatives at xi = -1 and xi = +1.
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub dleft: Vec<f64>,
    pub dright: Vec<f64>,
}

impl Basis1D {
    pub fn new(k: usize) -> Result<Self> {
        check_degree(k)?;
        let rule = gauss_rule(k + 1)?;
        let dim = k + 1;
        let mut phi = Vec::with_capacity(rule.len() * dim);
        let mut dphi = Vec::with_capacity(rule.len() * dim);
        let mut d2phi = Vec::with_capacity(rule.len() * dim);
        for &x in &rule.nodes {
            let (p, d, dd) = legendre_all(k, x);
            phi.extend(p);
            dphi.extend(d);
            d2phi.extend(dd);
        }
        let (left, dleft, _) = legendre_all(k, -1.0);
        let (right, dright, _) = legendre_all(k, 1.0);
        Ok(Self {
            k,
            rule,
            phi,
            dphi,
            d2phi,
            left,
            right,
            dleft,
            dright,
        })
    }

    pub fn dim(&self) -> usize {
        self.k + 1
    }

    /// `(2m + 1)`: inverse of the reference mass `2 / (2m + 1)` times 2.
    /// Physical mass of mode `m` on a cell of width `h` is `h / (2m + 1)`.
    pub fn mass_scale(&self, m: usize) -> f64 {
        (2 * m + 1) as f64
    }

    pub fn eval(&self, coeffs: &[f64], xi: f64) -> f64 {
        let (p, _, _) = legendre_all(self.k, xi);
        coeffs.iter().zip(&p).map(|(c, p)| c * p).sum()
    }

    /// Derivative with respect to the reference coordinate.
    pub fn eval_derivative(&self, coeffs: &[f64], xi: f64) -> f64 {
        let (_, d, _) = legendre_all(self.k, xi);
        coeffs.iter().zip(&d).map(|(c, d)| c * d).sum()
    }

    pub fn right_trace(&self, coeffs: &[f64]) -> f64 {
        dot(coeffs, &self.right)
    }

    pub fn left_trace(&self, coeffs: &[f64]) -> f64 {
        dot(coeffs, &self.left)
    }

    pub fn right_slope(&self, coeffs: &[f64]) -> f64 {
        dot(coeffs, &self.dright)
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Total-degree 2D basis tabulated on a tensor Gauss rule with `k + 1` points per direction.
#[derive(Debug, Clone)]
pub struct Basis2D {
    pub k: usize,
    pub rule: QuadratureRule,
    /// `(a, b)` Legendre degrees of each mode.
    pub modes: Vec<(usize, usize)>,
    /// Volume tables indexed `[(qy * nq + qx) * dim + m]`.
    pub phi: Vec<f64>,
    pub dxi: Vec<f64>,
    pub deta: Vec<f64>,
    pub dxixi: Vec<f64>,
    pub detaeta: Vec<f64>,
    /// Edge tables indexed `[q * dim + m]`: x-edges (xi = -1 / +1, eta = node q)
    /// and y-edges (eta = -1 / +1, xi = node q).
    pub west: EdgeTable,
    pub east: EdgeTable,
    pub south: EdgeTable,
    pub north: EdgeTable,
}

#[derive(Debug, Clone, Default)]
pub struct EdgeTable {
    pub phi: Vec<f64>,
    pub dxi: Vec<f64>,
    pub deta: Vec<f64>,
}

pub fn p_k_dimension(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

pub fn p_k_modes(k: usize) -> Vec<(usize, usize)> {
    let mut modes = Vec::with_capacity(p_k_dimension(k));
    for total in 0..=k {
        for b in 0..=total {
            modes.push((total - b, b));
        }
    }
    modes
}

impl Basis2D {
    pub fn new(k: usize) -> Result<Self> {
        check_degree(k)?;
        let rule = gauss_rule(k + 1)?;
        let modes = p_k_modes(k);
        let nq = rule.len();
        let dim = modes.len();
        let tab: Vec<_> = rule.nodes.iter().map(|&x| legendre_all(k, x)).collect();
        let mut phi = Vec::with_capacity(nq * nq * dim);
        let mut dxi = Vec::with_capacity(nq * nq * dim);
        let mut deta = Vec::with_capacity(nq * nq * dim);
        let mut dxixi = Vec::with_capacity(nq * nq * dim);
        let mut detaeta = Vec::with_capacity(nq * nq * dim);
        for qy in 0..nq {
            for qx in 0..nq {
                let (px, dx, ddx) = &tab[qx];
                let (py, dy, ddy) = &tab[qy];
                for &(a, b) in &modes {
                    phi.push(px[a] * py[b]);
                    dxi.push(dx[a] * py[b]);
                    deta.push(px[a] * dy[b]);
                    dxixi.push(ddx[a] * py[b]);
                    detaeta.push(px[a] * ddy[b]);
                }
            }
        }
        let edge = |fixed: f64, along_x: bool| {
            let (pf, df, _) = legendre_all(k, fixed);
            let mut t = EdgeTable::default();
            for q in 0..nq {
                let (pq, dq, _) = &tab[q];
                for &(a, b) in &modes {
                    if along_x {
                        // eta fixed, xi = node
                        t.phi.push(pq[a] * pf[b]);
                        t.dxi.push(dq[a] * pf[b]);
                        t.deta.push(pq[a] * df[b]);
                    } else {
                        t.phi.push(pf[a] * pq[b]);
                        t.dxi.push(df[a] * pq[b]);
                        t.deta.push(pf[a] * dq[b]);
                    }
                }
            }
            t
        };
        Ok(Self {
            k,
            west: edge(-1.0, false),
            east: edge(1.0, false),
            south: edge(-1.0, true),
            north: edge(1.0, true),
            rule,
            modes,
            phi,
            dxi,
            deta,
            dxixi,
            detaeta,
        })
    }

    pub fn dim(&self) -> usize {
        self.modes.len()
    }

    pub fn nq(&self) -> usize {
        self.rule.len()
    }

    /// `(2a + 1)(2b + 1)`; physical mass of the mode is `hx hy / mass_scale`.
    pub fn mass_scale(&self, m: usize) -> f64 {
        let (a, b) = self.modes[m];
        ((2 * a + 1) * (2 * b + 1)) as f64
    }

    pub fn eval(&self, coeffs: &[f64], xi: f64, eta: f64) -> f64 {
        let (px, _, _) = legendre_all(self.k, xi);
        let (py, _, _) = legendre_all(self.k, eta);
        self.modes
            .iter()
            .zip(coeffs)
            .map(|(&(a, b), c)| c * px[a] * py[b])
            .sum()
    }

    /// Index of mode `(a, b)`.
    pub fn mode_index(&self, a: usize, b: usize) -> Option<usize> {
        self.modes.iter().position(|&m| m == (a, b))
    }
}
