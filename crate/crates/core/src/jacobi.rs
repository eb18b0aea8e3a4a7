//! Classical and orthonormal Jacobi polynomials on `[-1, 1]` with weight
//! `h(x) = (1-x)^α (1+x)^β`.
//!
//! All evaluations run the classical three-term recurrence in [`Scaled`]
//! form: whenever an iterate exceeds `1e100` (or drops below `1e-100`) the
//! pair is renormalised and the logarithm of the factor is carried
//! separately. The orthonormal polynomial `P̂_n = P_n / √κ_n` subtracts
//! `½ ln κ_n` from that scale, so nothing overflows even for `α ~ 1e4`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::linalg::symmetric_tridiagonal_eigen;
use crate::scaled::Scaled;
use crate::specfun::{ln_factorial, ln_gamma_unchecked};

const RESCALE_HIGH: f64 = 1e100;
const RESCALE_LOW: f64 = 1e-100;
/// Largest `ln |v|` that still converts to a finite double.
const LN_MAX_F64: f64 = 709.78;

/// Degree and weight exponents of one Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct PolyParams {
    n: u32,
    alpha: f64,
    beta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    n: u32,
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawParams> for PolyParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        PolyParams::new(raw.n, raw.alpha, raw.beta)
    }
}

impl PolyParams {
    /// Requires `α, β > -1` (finite).
    pub fn new(n: u32, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && alpha.is_finite()) || !(beta > -1.0 && beta.is_finite()) {
            return Err(domain(format!(
                "Jacobi weight exponents must satisfy α, β > -1 (got α = {alpha}, β = {beta})"
            )));
        }
        Ok(Self { n, alpha, beta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The same degree with `α` and `β` exchanged (density reflected in `x`).
    pub fn swapped(&self) -> Self {
        Self { n: self.n, alpha: self.beta, beta: self.alpha }
    }

    pub fn with_degree(&self, n: u32) -> Self {
        Self { n, ..*self }
    }

    fn nf(&self) -> f64 {
        f64::from(self.n)
    }
}

/// `ln κ_n`, where `κ_n = ∫ P_n² h dx`.
pub fn ln_norm_constant(params: &PolyParams) -> f64 {
    let (a, b, n) = (params.alpha, params.beta, params.nf());
    let ln2 = std::f64::consts::LN_2;
    if params.n == 0 {
        // κ_0 = 2^{α+β+1} Γ(α+1)Γ(β+1)/Γ(α+β+2)
        return (a + b + 1.0) * ln2 + ln_gamma_unchecked(a + 1.0) + ln_gamma_unchecked(b + 1.0)
            - ln_gamma_unchecked(a + b + 2.0);
    }
    (a + b + 1.0) * ln2 + ln_gamma_unchecked(a + n + 1.0) + ln_gamma_unchecked(b + n + 1.0)
        - ln_factorial(params.n)
        - (a + b + 2.0 * n + 1.0).ln()
        - ln_gamma_unchecked(a + b + n + 1.0)
}

/// Normalisation constant `κ_n`; errors when it does not fit a double.
pub fn norm_constant(params: &PolyParams) -> Result<f64> {
    let l = ln_norm_constant(params);
    if l.abs() > LN_MAX_F64 {
        return Err(Error::Overflow(format!("κ_n (ln κ_n = {l})")));
    }
    Ok(l.exp())
}

/// `ln ∫ (1-x)^a (1+x)^b dx = ln (2^{a+b+1} B(a+1, b+1))`.
pub fn ln_weight_mass(a: f64, b: f64) -> f64 {
    (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma_unchecked(a + 1.0) + ln_gamma_unchecked(b + 1.0)
        - ln_gamma_unchecked(a + b + 2.0)
}

/// `P_n^{(α,β)}(x)` in scaled form, by upward recurrence.
pub fn classical_scaled(params: &PolyParams, x: f64) -> Scaled {
    let (a, b) = (params.alpha, params.beta);
    if params.n == 0 {
        return Scaled::from_f64(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    let mut ln_scale = 0.0;
    let ab = a + b;
    let a2_b2 = (a - b) * (a + b);
    for k in 2..=params.n {
        let k = f64::from(k);
        let s = 2.0 * k + ab;
        let c1 = 2.0 * k * (k + ab) * (s - 2.0);
        let c2 = (s - 1.0) * a2_b2;
        let c3 = (s - 2.0) * (s - 1.0) * s;
        let c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > RESCALE_HIGH || (mag < RESCALE_LOW && mag > 0.0) {
            prev /= mag;
            cur /= mag;
            ln_scale += mag.ln();
        }
    }
    Scaled::new(cur, ln_scale)
}

/// `d/dx P_n^{(α,β)}(x) = ((n+α+β+1)/2) P_{n-1}^{(α+1,β+1)}(x)`, scaled.
pub fn derivative_scaled(params: &PolyParams, x: f64) -> Scaled {
    if params.n == 0 {
        return Scaled::ZERO;
    }
    let shifted = PolyParams { n: params.n - 1, alpha: params.alpha + 1.0, beta: params.beta + 1.0 };
    let factor = 0.5 * (params.nf() + params.alpha + params.beta + 1.0);
    let v = classical_scaled(&shifted, x);
    Scaled::new(v.mantissa * factor, v.ln_scale)
}

/// `P̂_n(x) = P_n(x)/√κ_n`, scaled.
pub fn orthonormal_scaled(params: &PolyParams, x: f64) -> Scaled {
    classical_scaled(params, x).scale_ln(-0.5 * ln_norm_constant(params))
}

/// `P̂_n'(x)`, scaled.
pub fn orthonormal_derivative_scaled(params: &PolyParams, x: f64) -> Scaled {
    derivative_scaled(params, x).scale_ln(-0.5 * ln_norm_constant(params))
}

fn check_x(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(format!("x = {x} lies outside [-1, 1]")))
    }
}

fn collapse(v: Scaled, what: &str) -> Result<f64> {
    let out = v.to_f64();
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow(format!("{what} (ln|value| = {})", v.ln_abs())))
    }
}

/// Classical `P_n^{(α,β)}(x)` for `|x| <= 1`.
pub fn eval_classical(params: &PolyParams, x: f64) -> Result<f64> {
    check_x(x)?;
    collapse(classical_scaled(params, x), "P_n(x)")
}

/// Orthonormal `P̂_n^{(α,β)}(x)` for `|x| <= 1`.
pub fn eval_orthonormal(params: &PolyParams, x: f64) -> Result<f64> {
    check_x(x)?;
    collapse(orthonormal_scaled(params, x), "P̂_n(x)")
}

/// `d/dx P_n^{(α,β)}(x)` for `|x| <= 1`.
pub fn eval_derivative(params: &PolyParams, x: f64) -> Result<f64> {
    check_x(x)?;
    collapse(derivative_scaled(params, x), "P_n'(x)")
}

/// Coefficients of the orthonormal three-term recurrence
/// `√b_{k+1} p_{k+1} = (x - a_k) p_k - √b_k p_{k-1}` for the Jacobi weight.
#[derive(Debug, Clone)]
pub struct RecurrenceCoefficients {
    /// `a_0 .. a_{m-1}`.
    pub diag: Vec<f64>,
    /// `√b_1 .. √b_m`.
    pub offdiag: Vec<f64>,
}

/// Recurrence coefficients for the weight `(1-x)^a (1+x)^b`, `m` terms.
pub fn recurrence_coefficients(a: f64, b: f64, m: usize) -> RecurrenceCoefficients {
    let ab = a + b;
    let diag = (0..m)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (b - a) * (b + a) / (s * (s + 2.0))
            }
        })
        .collect();
    let offdiag = (1..=m)
        .map(|k| {
            let kf = k as f64;
            let s = 2.0 * kf + ab;
            let bk = if k == 1 {
                // the generic form is 0/0 when α+β = -1
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            };
            bk.sqrt()
        })
        .collect();
    RecurrenceCoefficients { diag, offdiag }
}

/// One Newton step `x - P_n(x)/P_n'(x)`, computed from scaled values.
fn newton_step(params: &PolyParams, x: f64) -> f64 {
    let p = classical_scaled(params, x);
    let dp = derivative_scaled(params, x);
    if dp.mantissa == 0.0 {
        return x;
    }
    x - p.mantissa / dp.mantissa * (p.ln_scale - dp.ln_scale).exp()
}

/// Zeros of `P_n^{(α,β)}` in increasing order; empty for `n = 0`.
///
/// Eigenvalues of the `n × n` Jacobi matrix, each followed by one Newton
/// step that is kept only if it stays inside the bracketing gap.
pub fn zeros(params: &PolyParams) -> Result<Vec<f64>> {
    let n = params.n as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    let rc = recurrence_coefficients(params.alpha, params.beta, n);
    let eig = symmetric_tridiagonal_eigen(&rc.diag, &rc.offdiag[..n - 1])?;
    Ok(polish_roots(params, eig.values))
}

pub(crate) fn polish_roots(params: &PolyParams, mut roots: Vec<f64>) -> Vec<f64> {
    let n = roots.len();
    let raw = roots.clone();
    for i in 0..n {
        let lo = if i == 0 { -1.0 } else { 0.5 * (raw[i - 1] + raw[i]) };
        let hi = if i + 1 == n { 1.0 } else { 0.5 * (raw[i] + raw[i + 1]) };
        let polished = newton_step(params, raw[i]);
        if polished.is_finite() && polished > lo && polished < hi {
            roots[i] = polished;
        }
    }
    roots
}

/// `α ln(1-x) + β ln(1+x)` from accurately known complements, with the
/// convention `0 · ln 0 = 0`.
pub fn ln_weight(alpha: f64, beta: f64, one_minus_x: f64, one_plus_x: f64) -> f64 {
    let mut out = 0.0;
    if alpha != 0.0 {
        out += alpha * one_minus_x.ln();
    }
    if beta != 0.0 {
        out += beta * one_plus_x.ln();
    }
    out
}

/// `ln ρ_n(x)` given accurate complements `1-x` and `1+x`.
pub fn ln_density(params: &PolyParams, x: f64, one_minus_x: f64, one_plus_x: f64) -> f64 {
    let p = orthonormal_scaled(params, x);
    2.0 * p.ln_abs() + ln_weight(params.alpha, params.beta, one_minus_x, one_plus_x)
}

/// Rakhmanov density `ρ_n(x) = P̂_n(x)² (1-x)^α (1+x)^β`.
pub fn rakhmanov_density(params: &PolyParams, x: f64) -> Result<f64> {
    check_x(x)?;
    if (x == 1.0 && params.alpha < 0.0) || (x == -1.0 && params.beta < 0.0) {
        return Err(domain(format!("ρ_n is singular at x = {x} for α = {}, β = {}", params.alpha, params.beta)));
    }
    let v = ln_density(params, x, 1.0 - x, 1.0 + x).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("ρ_n({x})")))
    }
}
