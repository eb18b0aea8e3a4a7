use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::jacobi::{ln_weight_mass, polish_roots, recurrence_coefficients, PolyParams};
use crate::linalg::symmetric_tridiagonal_eigen;
use crate::scaled::{NeumaierSum, Scaled, ScaledSum};
use crate::specfun::gamma;

/// Largest supported rule order.
pub const MAX_RULE_ORDER: usize = 4096;

/// Beyond this `|ln μ0|` the weights are stored relative to `exp(ln_scale)`.
const LN_SCALE_THRESHOLD: f64 = 600.0;

/// An `m`-point Gauss–Jacobi rule for `∫ f(x) (1-x)^a (1+x)^b dx`.
///
/// The absolute weight of node `i` is `weights[i] · exp(ln_scale)`; the
/// scale is zero unless the zeroth moment leaves the comfortable double
/// range (exponents in the hundreds).
#[derive(Debug, Clone, Serialize)]
pub struct QuadRule {
    exp_a: f64,
    exp_b: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    ln_scale: f64,
}

impl QuadRule {
    pub fn exp_a(&self) -> f64 {
        self.exp_a
    }

    pub fn exp_b(&self) -> f64 {
        self.exp_b
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights relative to `exp(ln_scale())`.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn ln_scale(&self) -> f64 {
        self.ln_scale
    }

    /// Absolute weights; may overflow for extreme exponents.
    pub fn weights(&self) -> Vec<f64> {
        let s = self.ln_scale.exp();
        self.weights.iter().map(|w| w * s).collect()
    }
}

fn zeroth_moment(a: f64, b: f64) -> (f64, f64) {
    let ln_mu0 = ln_weight_mass(a, b);
    if ln_mu0.abs() > LN_SCALE_THRESHOLD {
        return (1.0, ln_mu0);
    }
    // Direct product keeps small integer exponents exact (μ0 = 2 for a = b = 0).
    let direct = if a + b + 2.0 < 170.0 {
        (a + b + 1.0).exp2() * gamma(a + 1.0).unwrap_or(f64::NAN) * gamma(b + 1.0).unwrap_or(f64::NAN)
            / gamma(a + b + 2.0).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    if direct.is_finite() && direct > 0.0 {
        (direct, 0.0)
    } else {
        (ln_mu0.exp(), 0.0)
    }
}

/// Golub–Welsch construction of the `m`-point Gauss–Jacobi rule.
///
/// Nodes are eigenvalues of the symmetric Jacobi matrix, refined by one
/// Newton step on `P_m^{(a,b)}`; weights are the Christoffel numbers
/// `μ0 / Σ_k p_k(x_i)²` evaluated with the orthonormal recurrence at the
/// refined nodes.
pub fn gauss_jacobi_rule(a: f64, b: f64, m: usize) -> Result<QuadRule> {
    if !(a > -1.0 && a.is_finite() && b > -1.0 && b.is_finite()) {
        return Err(domain(format!("Gauss–Jacobi exponents must exceed -1 (got a = {a}, b = {b})")));
    }
    if m == 0 || m > MAX_RULE_ORDER {
        return Err(domain(format!("rule order must lie in 1..={MAX_RULE_ORDER}, got {m}")));
    }
    let rc = recurrence_coefficients(a, b, m);
    let eig = symmetric_tridiagonal_eigen(&rc.diag, &rc.offdiag[..m - 1])?;
    let params = PolyParams::new(m as u32, a, b)?;
    let nodes = polish_roots(&params, eig.values);

    let (mu0, ln_scale) = zeroth_moment(a, b);
    let weights = nodes
        .iter()
        .map(|&x| {
            let mut prev = 0.0;
            let mut cur = 1.0;
            let mut sum = 1.0;
            for k in 0..m - 1 {
                let back = if k == 0 { 0.0 } else { rc.offdiag[k - 1] * prev };
                let next = ((x - rc.diag[k]) * cur - back) / rc.offdiag[k];
                prev = cur;
                cur = next;
                sum += cur * cur;
            }
            mu0 / sum
        })
        .collect::<Vec<_>>();
    Ok(QuadRule { exp_a: a, exp_b: b, nodes, weights, ln_scale })
}

/// `Σ w_i f(x_i)` in ascending node order with compensated summation.
pub fn integrate_weighted(rule: &QuadRule, f: impl Fn(f64) -> f64) -> Result<f64> {
    let mut acc = NeumaierSum::new();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: x });
        }
        acc.push(w * v);
    }
    Ok(acc.total() * rule.ln_scale.exp())
}

/// Like [`integrate_weighted`] for integrands given in scaled form.
pub fn integrate_weighted_scaled(rule: &QuadRule, f: impl Fn(f64) -> Scaled) -> Result<Scaled> {
    let mut acc = ScaledSum::new();
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.mantissa.is_finite() || !v.ln_scale.is_finite() && v.mantissa != 0.0 {
            return Err(Error::NonFinite { node: x });
        }
        acc.push(Scaled::new(v.mantissa * w, v.ln_scale));
    }
    Ok(acc.total().scale_ln(rule.ln_scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_point_legendre_is_midpoint() {
        let r = gauss_jacobi_rule(0.0, 0.0, 1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_eq!(r.weights(), vec![2.0]);
    }

    #[test]
    fn two_point_legendre() {
        let r = gauss_jacobi_rule(0.0, 0.0, 2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_relative_eq!(r.nodes()[0], -s, max_relative = 1e-15);
        assert_relative_eq!(r.nodes()[1], s, max_relative = 1e-15);
        for w in r.weights() {
            assert_relative_eq!(w, 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn zeroth_moment_example() {
        let r = gauss_jacobi_rule(2.0, 3.0, 1).unwrap();
        assert_relative_eq!(r.weights().iter().sum::<f64>(), 16.0 / 15.0, max_relative = 1e-14);
    }

    #[test]
    fn weights_positive_nodes_increasing() {
        for (a, b) in [(-0.5, 0.5), (3.5, -0.9), (40.0, 2.0)] {
            let r = gauss_jacobi_rule(a, b, 33).unwrap();
            assert!(r.scaled_weights().iter().all(|&w| w > 0.0));
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(r.nodes()[0] > -1.0 && r.nodes()[32] < 1.0);
        }
    }

    #[test]
    fn large_exponents_use_scaled_weights() {
        let r = gauss_jacobi_rule(2000.0, 4.0, 5).unwrap();
        assert!(r.ln_scale() > 600.0);
        let mass = integrate_weighted_scaled(&r, |_| Scaled::from_f64(1.0)).unwrap();
        assert!((mass.ln_abs() - ln_weight_mass(2000.0, 4.0)).abs() < 1e-12 * mass.ln_abs());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gauss_jacobi_rule(-1.0, 0.0, 3).is_err());
        assert!(gauss_jacobi_rule(0.0, 0.0, 0).is_err());
        assert!(gauss_jacobi_rule(0.0, 0.0, MAX_RULE_ORDER + 1).is_err());
    }

    #[test]
    fn integrate_weighted_examples() {
        let r = gauss_jacobi_rule(0.0, 0.0, 3).unwrap();
        assert_relative_eq!(integrate_weighted(&r, |x| x * x).unwrap(), 2.0 / 3.0, max_relative = 1e-15);
        let err = integrate_weighted(&r, |x| if x > 0.5 { f64::NAN } else { 1.0 }).unwrap_err();
        match err {
            Error::NonFinite { node } => assert!(node > 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }
}
