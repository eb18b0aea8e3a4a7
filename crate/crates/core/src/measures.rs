//! Spreading and complexity measures of the Rakhmanov density
//! `ρ_n(x) = P̂_n(x)² (1-x)^α (1+x)^β`.
//!
//! Closed forms are used where they exist (variance, Fisher information,
//! the weight functional `I`). Every closed form has an independent
//! numerical route in this module (`*_numeric`), and the quantities
//! without a closed form (`E`, Lq-norms of non-even order) are computed by
//! the zero-aware tanh-sinh integrator. Disequilibrium is exact through a
//! Gauss–Jacobi rule on the doubled weight.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2, PI};
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::jacobi::{
    classical_scaled, ln_density, ln_norm_constant, ln_weight, orthonormal_derivative_scaled, orthonormal_scaled,
    zeros, PolyParams,
};
use crate::quadrature::{
    breakpoints, gauss_jacobi_rule, integrate_cells, integrate_weighted_scaled, IntegralResult, IntegrationOptions,
    Point,
};
use crate::scaled::Scaled;
use crate::specfun::digamma_unchecked;

/// A measure value that may be infinite by definition (the Fisher
/// information of densities with non-integrable `[ρ']²/ρ`).
///
/// Serialises as a number or as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    /// Product with a finite factor; infinity propagates.
    pub fn times(self, factor: f64) -> Extended {
        match self {
            Extended::Finite(v) => Extended::Finite(v * factor),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_f64(*v),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExtendedVisitor;
        impl Visitor<'_> for ExtendedVisitor {
            type Value = Extended;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Extended, E> {
                Ok(Extended::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Extended, E> {
                if v == "inf" {
                    Ok(Extended::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(ExtendedVisitor)
    }
}

/// Default absolute tolerance of the numerical routes for degree `n`.
pub fn default_tolerance(n: u32) -> f64 {
    if n <= 50 {
        1e-10
    } else {
        1e-8
    }
}

// ---------------------------------------------------------------------------
// Variance

/// Closed-form variance `⟨x²⟩ - ⟨x⟩²` of `ρ_n`.
pub fn variance(params: &PolyParams) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let n = f64::from(params.n());
    let s = a + b;
    let first = 4.0 * (n + 1.0) * (n + a + 1.0) * (n + b + 1.0) * (n + s + 1.0)
        / ((2.0 * n + s + 1.0) * (2.0 * n + s + 2.0).powi(2) * (2.0 * n + s + 3.0));
    let second = match params.n() {
        0 => 0.0,
        // (n+s)/(2n+s-1) is 0/0 at s = -1; its value is 1 for n = 1.
        1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s).powi(2) * (3.0 + s)),
        _ => {
            4.0 * n * (n + a) * (n + b) * (n + s) / ((2.0 * n + s - 1.0) * (2.0 * n + s).powi(2) * (2.0 * n + s + 1.0))
        }
    };
    first + second
}

/// Variance from exact Gauss–Jacobi moments `⟨x⟩`, `⟨x²⟩`.
pub fn variance_numeric(params: &PolyParams) -> Result<f64> {
    let rule = gauss_jacobi_rule(params.alpha(), params.beta(), params.n() as usize + 2)?;
    let moment = |k: i32| -> Result<f64> {
        let v = integrate_weighted_scaled(&rule, |x| {
            let p = orthonormal_scaled(params, x);
            Scaled::new(p.mantissa * p.mantissa * x.powi(k), 2.0 * p.ln_scale)
        })?;
        Ok(v.to_f64())
    };
    let m1 = moment(1)?;
    let m2 = moment(2)?;
    Ok(m2 - m1 * m1)
}

// ---------------------------------------------------------------------------
// Fisher information

/// Whether `∫ [ρ']²/ρ` converges: `α = β = 0`, or each exponent is either
/// `0` or `> 1` (the mixed cases are mirror images).
pub fn fisher_is_finite(params: &PolyParams) -> bool {
    let ok = |e: f64| e == 0.0 || e > 1.0;
    ok(params.alpha()) && ok(params.beta())
}

/// Closed-form Fisher information of `ρ_n`; [`Extended::Infinite`] outside
/// the finite classes.
pub fn fisher_info(params: &PolyParams) -> Extended {
    let (a, b) = (params.alpha(), params.beta());
    let n = f64::from(params.n());
    if a == 0.0 && b == 0.0 {
        return Extended::Finite(2.0 * n * (n + 1.0) * (2.0 * n + 1.0));
    }
    if !fisher_is_finite(params) {
        return Extended::Infinite;
    }
    if a == 0.0 || b == 0.0 {
        // x → -x maps (α, 0) onto (0, α) and preserves F.
        let b = a.max(b);
        let v = (2.0 * n + b + 1.0) / 4.0
            * (n * n / (b + 1.0) + n + (4.0 * n + 1.0) * (n + b + 1.0) + (n + 1.0).powi(2) / (b - 1.0));
        return Extended::Finite(v);
    }
    let s = a + b;
    let v = (2.0 * n + s + 1.0) / (4.0 * (n + s - 1.0))
        * (n * (n + s - 1.0) * ((n + a) / (b + 1.0) + 2.0 + (n + b) / (a + 1.0))
            + (n + 1.0) * (n + s) * ((n + a) / (b - 1.0) + 2.0 + (n + b) / (a - 1.0)));
    Extended::Finite(v)
}

/// `(2P̂' + P̂ h'/h)² h`, which equals `[ρ']²/ρ` and stays finite at the
/// zeros of `P̂` (where it reduces to `4 h P̂'²`).
fn fisher_integrand(params: &PolyParams, pt: Point) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let p = orthonormal_scaled(params, pt.x);
    let dp = orthonormal_derivative_scaled(params, pt.x);
    let mut log_derivative = 0.0;
    if a != 0.0 {
        log_derivative -= a / pt.one_minus_x;
    }
    if b != 0.0 {
        log_derivative += b / pt.one_plus_x;
    }
    let scale = match (p.mantissa == 0.0, dp.mantissa == 0.0) {
        (true, true) => return 0.0,
        (true, false) => dp.ln_scale,
        (false, true) => p.ln_scale,
        (false, false) => p.ln_scale.max(dp.ln_scale),
    };
    let amp = 2.0 * dp.relative_to(scale) + p.relative_to(scale) * log_derivative;
    if amp == 0.0 {
        return 0.0;
    }
    let ln_h = ln_weight(a, b, pt.one_minus_x, pt.one_plus_x);
    (2.0 * amp.abs().ln() + 2.0 * scale + ln_h).exp()
}

/// `∫ [ρ']²/ρ dx` by quadrature; only for the finite classes.
pub fn fisher_info_numeric(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    if !fisher_is_finite(params) {
        return Err(domain(format!("Fisher information diverges for α = {}, β = {}", params.alpha(), params.beta())));
    }
    integrate_cells(&breakpoints(params)?, |pt| fisher_integrand(params, pt), opts)
}

// ---------------------------------------------------------------------------
// Shannon functionals

/// Closed form of `I = -∫ ρ_n ln h dx`.
pub fn shannon_i(params: &PolyParams) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let n = f64::from(params.n());
    let s = a + b;
    let bracket = if params.n() == 0 {
        // 1/(s+1) + ψ(s+1) = ψ(s+2), valid also for s + 1 <= 0
        if s == 0.0 {
            0.0
        } else {
            digamma_unchecked(s + 2.0) - LN_2
        }
    } else {
        1.0 / (2.0 * n + s + 1.0) + 2.0 * digamma_unchecked(2.0 * n + s + 1.0) - digamma_unchecked(n + s + 1.0) - LN_2
    };
    let tail = |e: f64| if e == 0.0 { 0.0 } else { e * digamma_unchecked(n + e + 1.0) };
    s * bracket - (tail(a) + tail(b))
}

/// `-∫ ρ_n ln h dx` by quadrature.
pub fn shannon_i_numeric(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    integrate_cells(
        &breakpoints(params)?,
        |pt| {
            let ln_h = ln_weight(params.alpha(), params.beta(), pt.one_minus_x, pt.one_plus_x);
            let ln_rho = ln_density(params, pt.x, pt.one_minus_x, pt.one_plus_x);
            if ln_rho == f64::NEG_INFINITY {
                0.0
            } else {
                -ln_rho.exp() * ln_h
            }
        },
        opts,
    )
}

/// `E[P̂_n] = -∫ ρ_n ln P̂_n² dx`, integrating cell by cell between zeros.
pub fn shannon_e_numeric(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    integrate_cells(
        &breakpoints(params)?,
        |pt| {
            let p = orthonormal_scaled(params, pt.x);
            if p.mantissa == 0.0 {
                return 0.0;
            }
            let ln_p2 = 2.0 * p.ln_abs();
            let ln_rho = ln_p2 + ln_weight(params.alpha(), params.beta(), pt.one_minus_x, pt.one_plus_x);
            -ln_rho.exp() * ln_p2
        },
        opts,
    )
}

/// `S = E + I`, with `I` in closed form.
pub fn shannon_entropy(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    let e = shannon_e_numeric(params, opts)?;
    Ok(IntegralResult { value: e.value + shannon_i(params), ..e })
}

/// `S = -∫ ρ ln ρ` by a single direct quadrature.
pub fn shannon_entropy_direct(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    integrate_cells(
        &breakpoints(params)?,
        |pt| {
            let ln_rho = ln_density(params, pt.x, pt.one_minus_x, pt.one_plus_x);
            if ln_rho == f64::NEG_INFINITY {
                0.0
            } else {
                -ln_rho.exp() * ln_rho
            }
        },
        opts,
    )
}

/// [`shannon_entropy`] cross-checked against [`shannon_entropy_direct`];
/// fails if the two disagree beyond their combined error estimates plus a
/// roundoff allowance.
pub fn shannon_entropy_checked(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    let split = shannon_entropy(params, opts)?;
    let direct = shannon_entropy_direct(params, opts)?;
    let allowance =
        split.abs_error_estimate + direct.abs_error_estimate + 1e3 * f64::EPSILON * (1.0 + split.value.abs());
    if (split.value - direct.value).abs() > allowance.max(opts.tol) {
        return Err(domain(format!(
            "entropy routes disagree: E + I = {} but -∫ρ ln ρ = {} (allowance {allowance:e})",
            split.value, direct.value
        )));
    }
    Ok(split)
}

/// Shannon spreading length `L_S = exp(S)`.
pub fn spreading_length(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    let s = shannon_entropy(params, opts)?;
    let l = s.value.exp();
    Ok(IntegralResult { value: l, abs_error_estimate: l * s.abs_error_estimate, ..s })
}

// ---------------------------------------------------------------------------
// Lq-norms of the classical polynomial

fn even_integer(p: f64) -> Option<u32> {
    if p > 0.0 && p.fract() == 0.0 && (p as u64).is_multiple_of(2) && p <= 1e6 {
        Some(p as u32)
    } else {
        None
    }
}

fn check_order(p: f64) -> Result<()> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("Lq-norm order must be positive, got {p}")))
    }
}

/// `ln N_p` with `N_p = ∫ h |P_n|^p dx` for the classical polynomial, plus
/// the absolute error estimate of `N_p / exp(ln N_p)` (zero for exact
/// even orders).
pub fn ln_lq_norm(params: &PolyParams, p: f64, opts: &IntegrationOptions) -> Result<(f64, f64)> {
    check_order(p)?;
    if let Some(k) = even_integer(p) {
        let m = ((params.n() as usize) * k as usize + 1).div_ceil(2).max(1);
        let rule = gauss_jacobi_rule(params.alpha(), params.beta(), m)?;
        let total = integrate_weighted_scaled(&rule, |x| {
            let v = classical_scaled(params, x);
            Scaled::new(v.mantissa.powi(k as i32), f64::from(k) * v.ln_scale)
        })?;
        return Ok((total.ln_abs(), 0.0));
    }
    // ∫ h |P̂|^p relative to the largest value at the zeros of P_{n+1}, where
    // the mass of ρ_n sits.
    let ln_integrand = |pt: Point| {
        let v = orthonormal_scaled(params, pt.x);
        p * v.ln_abs() + ln_weight(params.alpha(), params.beta(), pt.one_minus_x, pt.one_plus_x)
    };
    let reference = zeros(&params.with_degree(params.n() + 1))?
        .into_iter()
        .map(|x| ln_integrand(Point::new(x)))
        .fold(f64::NEG_INFINITY, f64::max);
    let r = integrate_cells(
        &breakpoints(params)?,
        |pt| {
            let l = ln_integrand(pt);
            if l == f64::NEG_INFINITY {
                0.0
            } else {
                (l - reference).exp()
            }
        },
        opts,
    )?;
    let ln_kappa = ln_norm_constant(params);
    Ok((0.5 * p * ln_kappa + reference + r.value.ln(), r.abs_error_estimate / r.value))
}

/// `N_p[P_n] = ∫ (1-x)^α (1+x)^β |P_n(x)|^p dx`.
pub fn lq_norm(params: &PolyParams, p: f64, opts: &IntegrationOptions) -> Result<f64> {
    let (l, _) = ln_lq_norm(params, p, opts)?;
    let v = l.exp();
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("N_{p} (ln N_p = {l})")))
    }
}

/// Entropy from the derivative of the Lq-norm at `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormDerivativeEntropy {
    /// `E[P_n] = -∫ h P_n² ln P_n²` of the classical polynomial (may
    /// overflow to infinity for large exponents).
    pub classical: f64,
    /// `E[P̂_n] = E[P_n]/κ_n + ln κ_n`.
    pub orthonormal: f64,
    pub abs_error_estimate: f64,
}

/// `E[P_n] = -2 dN_p/dp |_{p=2}` by the central difference
/// `(N_{2+h} - N_{2-h}) / (2h)`, converted to the orthonormal polynomial.
///
/// The difference is integrated as one quantity,
/// `N_{2+h} - N_{2-h} = κ ∫ ρ · 2 sinh(h ln|P_n|)`, so it does not cancel.
pub fn shannon_e_via_norm_derivative(
    params: &PolyParams,
    step: f64,
    opts: &IntegrationOptions,
) -> Result<NormDerivativeEntropy> {
    if !(1e-5..=1e-2).contains(&step) {
        return Err(domain(format!("finite-difference step must lie in [1e-5, 1e-2], got {step}")));
    }
    let ln_kappa = ln_norm_constant(params);
    let half_ln_kappa = 0.5 * ln_kappa;
    let r = integrate_cells(
        &breakpoints(params)?,
        |pt| {
            let v = orthonormal_scaled(params, pt.x);
            if v.mantissa == 0.0 {
                return 0.0;
            }
            let ln_abs_p = v.ln_abs();
            let ln_rho = 2.0 * ln_abs_p + ln_weight(params.alpha(), params.beta(), pt.one_minus_x, pt.one_plus_x);
            let ln_classical = ln_abs_p + half_ln_kappa;
            ln_rho.exp() * 2.0 * (step * ln_classical).sinh() / step
        },
        opts,
    )?;
    // (N_{2+h} - N_{2-h})/(2h) = κ · r / 2, so -2 dN/dp = -κ r.
    let orthonormal = -r.value + ln_kappa;
    Ok(NormDerivativeEntropy {
        classical: -ln_kappa.exp() * r.value,
        orthonormal,
        abs_error_estimate: r.abs_error_estimate,
    })
}

// ---------------------------------------------------------------------------
// Disequilibrium

fn check_w2_domain(params: &PolyParams) -> Result<()> {
    if 2.0 * params.alpha() <= -1.0 || 2.0 * params.beta() <= -1.0 {
        return Err(domain(format!(
            "W2 unsupported: weight exponents 2α = {}, 2β = {} leave the Gauss–Jacobi domain \
             (the defining integral diverges)",
            2.0 * params.alpha(),
            2.0 * params.beta()
        )));
    }
    Ok(())
}

/// `W₂ = ∫ ρ_n² dx`, exact through a Gauss–Jacobi(2α, 2β) rule of
/// `2n + 1` nodes applied to `P̂_n⁴`.
pub fn disequilibrium_w2(params: &PolyParams) -> Result<f64> {
    check_w2_domain(params)?;
    let rule = gauss_jacobi_rule(2.0 * params.alpha(), 2.0 * params.beta(), 2 * params.n() as usize + 1)?;
    let total = integrate_weighted_scaled(&rule, |x| {
        let v = orthonormal_scaled(params, x);
        Scaled::new(v.mantissa.powi(4), 4.0 * v.ln_scale)
    })?;
    let out = total.to_f64();
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow(format!("W2 (ln W2 = {})", total.ln_abs())))
    }
}

/// `∫ ρ_n² dx` by zero-aware tanh-sinh quadrature.
pub fn disequilibrium_w2_numeric(params: &PolyParams, opts: &IntegrationOptions) -> Result<IntegralResult> {
    check_w2_domain(params)?;
    integrate_cells(
        &breakpoints(params)?,
        |pt| (2.0 * ln_density(params, pt.x, pt.one_minus_x, pt.one_plus_x)).exp(),
        opts,
    )
}

// ---------------------------------------------------------------------------
// Complexities

/// `C_CR = F · V`.
pub fn cramer_rao(params: &PolyParams) -> Extended {
    fisher_info(params).times(variance(params))
}

/// `C_FS = F · L_S² / (2πe)`.
pub fn fisher_shannon(params: &PolyParams, opts: &IntegrationOptions) -> Result<Extended> {
    let f = fisher_info(params);
    if f.is_infinite() {
        return Ok(Extended::Infinite);
    }
    let l = spreading_length(params, opts)?.value;
    Ok(f.times(l * l / (2.0 * PI * E)))
}

/// `C_LMC = W₂ · L_S`.
pub fn lmc(params: &PolyParams, opts: &IntegrationOptions) -> Result<f64> {
    Ok(disequilibrium_w2(params)? * spreading_length(params, opts)?.value)
}

// ---------------------------------------------------------------------------
// Everything at once

/// Options for [`MeasureSet::compute`].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureOptions {
    pub integration: IntegrationOptions,
    /// Orders `p` of the Lq-norms to include.
    pub lq_orders: Vec<f64>,
}

impl MeasureOptions {
    pub fn for_params(params: &PolyParams) -> Self {
        Self {
            integration: IntegrationOptions::with_tol(default_tolerance(params.n())),
            lq_orders: vec![1.0, 2.0, 4.0],
        }
    }
}

/// All measures of one polynomial.
///
/// `shannon_S`, `spreading_length` and the three complexities are derived
/// from the stored factors, so the product identities hold exactly as
/// stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSet {
    #[serde(flatten)]
    pub params: PolyParams,
    pub variance: f64,
    pub fisher: Extended,
    #[serde(rename = "shannon_E")]
    pub shannon_e: f64,
    #[serde(rename = "shannon_I")]
    pub shannon_i: f64,
    #[serde(rename = "shannon_S")]
    pub shannon_s: f64,
    pub spreading_length: f64,
    /// Infinite when `2α <= -1` or `2β <= -1` (the integral diverges).
    pub w2: Extended,
    /// `N_p` keyed by the order as printed by `{p}`; orders whose norm does
    /// not fit a double are left out.
    pub lq_norms: BTreeMap<String, f64>,
    pub c_cr: Extended,
    pub c_fs: Extended,
    pub c_lmc: Extended,
    /// Absolute error estimates of the numerically computed entries.
    pub errors: BTreeMap<String, f64>,
}

impl MeasureSet {
    pub fn compute(params: &PolyParams, opts: &MeasureOptions) -> Result<Self> {
        let variance = variance(params);
        let fisher = fisher_info(params);
        let e = shannon_e_numeric(params, &opts.integration)?;
        let shannon_i = shannon_i(params);
        let shannon_s = e.value + shannon_i;
        let spreading_length = shannon_s.exp();
        let w2 = if 2.0 * params.alpha() <= -1.0 || 2.0 * params.beta() <= -1.0 {
            Extended::Infinite
        } else {
            Extended::Finite(disequilibrium_w2(params)?)
        };

        let mut errors = BTreeMap::new();
        errors.insert("shannon_E".to_owned(), e.abs_error_estimate);
        errors.insert("shannon_S".to_owned(), e.abs_error_estimate);
        errors.insert("spreading_length".to_owned(), spreading_length * e.abs_error_estimate);

        let mut lq_norms = BTreeMap::new();
        for &p in &opts.lq_orders {
            let (ln_n, rel_err) = ln_lq_norm(params, p, &opts.integration)?;
            let v = ln_n.exp();
            if v.is_finite() && v > 0.0 {
                lq_norms.insert(format!("{p}"), v);
                if rel_err > 0.0 {
                    errors.insert(format!("lq_norm_{p}"), v * rel_err);
                }
            }
        }

        let c_cr = fisher.times(variance);
        let c_fs = fisher.times(spreading_length * spreading_length / (2.0 * PI * E));
        let c_lmc = w2.times(spreading_length);
        if let Extended::Finite(v) = c_fs {
            errors.insert("c_fs".to_owned(), 2.0 * v.abs() * e.abs_error_estimate);
        }
        if let Extended::Finite(v) = c_lmc {
            errors.insert("c_lmc".to_owned(), v.abs() * e.abs_error_estimate);
        }
        Ok(Self {
            params: *params,
            variance,
            fisher,
            shannon_e: e.value,
            shannon_i,
            shannon_s,
            spreading_length,
            w2,
            lq_norms,
            c_cr,
            c_fs,
            c_lmc,
            errors,
        })
    }
}
