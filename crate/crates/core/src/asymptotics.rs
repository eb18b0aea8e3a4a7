//! Leading-order asymptotic laws of the measures in two regimes: degree
//! `n → ∞` at fixed `(α, β)`, and parameter `α → ∞` at fixed `(n, β)`.
//!
//! Each predictor is total over its applicability class and returns
//! [`Error::UnsupportedClass`] outside it.

use std::f64::consts::{E, LN_2, PI};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::jacobi::PolyParams;
use crate::specfun::{digamma_unchecked, ln_factorial, ln_gamma_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n → ∞` at fixed `(α, β)`.
    Degree,
    /// `α → ∞` at fixed `(n, β)`.
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureId {
    Variance,
    Fisher,
    ShannonE,
    ShannonI,
    ShannonS,
    SpreadingLength,
    W2,
    CCr,
    CFs,
    CLmc,
}

impl MeasureId {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureId::Variance => "variance",
            MeasureId::Fisher => "fisher",
            MeasureId::ShannonE => "shannon_E",
            MeasureId::ShannonI => "shannon_I",
            MeasureId::ShannonS => "shannon_S",
            MeasureId::SpreadingLength => "spreading_length",
            MeasureId::W2 => "w2",
            MeasureId::CCr => "c_cr",
            MeasureId::CFs => "c_fs",
            MeasureId::CLmc => "c_lmc",
        }
    }
}

/// Growth law multiplying the leading coefficient `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Law {
    /// `c`
    Constant,
    /// `c n³`
    CubicDegree,
    /// `c ln n`
    LogDegree,
    /// `c n^exponent`
    PowerDegree { exponent: f64 },
    /// `c α`
    LinearAlpha,
    /// `c α²`
    QuadraticAlpha,
    /// `c / α`
    InverseAlpha,
    /// `c / α²`
    InverseSquareAlpha,
    /// `c ln α`
    LogAlpha,
    /// `slope α + log_coeff ln α + c`
    AffineLogAlpha { slope: f64, log_coeff: f64 },
}

impl Law {
    fn apply(self, c: f64, t: f64) -> f64 {
        match self {
            Law::Constant => c,
            Law::CubicDegree => c * t.powi(3),
            Law::LogDegree | Law::LogAlpha => c * t.ln(),
            Law::PowerDegree { exponent } => c * t.powf(exponent),
            Law::LinearAlpha => c * t,
            Law::QuadraticAlpha => c * t * t,
            Law::InverseAlpha => c / t,
            Law::InverseSquareAlpha => c / (t * t),
            Law::AffineLogAlpha { slope, log_coeff } => slope * t + log_coeff * t.ln() + c,
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::Constant => f.write_str("constant"),
            Law::CubicDegree => f.write_str("n^3"),
            Law::LogDegree => f.write_str("log n"),
            Law::PowerDegree { exponent } => write!(f, "n^{exponent}"),
            Law::LinearAlpha => f.write_str("alpha"),
            Law::QuadraticAlpha => f.write_str("alpha^2"),
            Law::InverseAlpha => f.write_str("1/alpha"),
            Law::InverseSquareAlpha => f.write_str("alpha^-2"),
            Law::LogAlpha => f.write_str("log alpha"),
            Law::AffineLogAlpha { slope, log_coeff } => {
                write!(f, "{slope}*alpha + {log_coeff}*log alpha + constant")
            }
        }
    }
}

impl Serialize for Law {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One leading-order law: `measure ~ law(coefficient, t)` with `t = n` or
/// `t = α` depending on the regime.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticPrediction {
    pub measure: MeasureId,
    pub regime: Regime,
    pub law: Law,
    #[serde(rename = "coefficient_or_value")]
    pub coefficient: f64,
    /// The class predicate this prediction was taken from.
    pub applicability: String,
}

impl AsymptoticPrediction {
    fn new(measure: MeasureId, regime: Regime, law: Law, coefficient: f64, applicability: impl Into<String>) -> Self {
        Self { measure, regime, law, coefficient, applicability: applicability.into() }
    }

    /// The predicted value at `t` (`n` or `α`).
    pub fn predict(&self, t: f64) -> f64 {
        self.law.apply(self.coefficient, t)
    }
}

/// Which form of the `α → ∞` disequilibrium constant to use: as printed,
/// or with `Γ(1+n+β)` squared in the denominator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Variant {
    #[default]
    Paper,
    DerivedCorrection,
}

fn unsupported(measure: MeasureId, requirement: impl Into<String>) -> Error {
    Error::UnsupportedClass { measure: measure.as_str(), requirement: requirement.into() }
}

// ---------------------------------------------------------------------------
// Degree regime

/// Fisher-type classes: both exponents `0`, or each `0` or `> 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum FisherClass {
    Legendre,
    /// One exponent zero, the other `b > 1`.
    OneSided {
        b: f64,
    },
    Interior {
        a: f64,
        b: f64,
    },
}

const FISHER_CLASSES: &str = "α = β = 0; α = 0, β > 1 (or mirrored); α > 1, β > 1";

fn fisher_class(measure: MeasureId, params: &PolyParams) -> Result<FisherClass> {
    let (a, b) = (params.alpha(), params.beta());
    match (a == 0.0, b == 0.0) {
        (true, true) => Ok(FisherClass::Legendre),
        (true, false) if b > 1.0 => Ok(FisherClass::OneSided { b }),
        (false, true) if a > 1.0 => Ok(FisherClass::OneSided { b: a }),
        (false, false) if a > 1.0 && b > 1.0 => Ok(FisherClass::Interior { a, b }),
        _ => Err(unsupported(measure, FISHER_CLASSES)),
    }
}

fn class_label(class: FisherClass) -> &'static str {
    match class {
        FisherClass::Legendre => "α = β = 0",
        FisherClass::OneSided { .. } => "one exponent 0, the other > 1",
        FisherClass::Interior { .. } => "α > 1, β > 1",
    }
}

fn fisher_coefficient(class: FisherClass) -> f64 {
    match class {
        FisherClass::Legendre => 4.0,
        FisherClass::OneSided { b } => 0.5 * (4.0 + 1.0 / (b - 1.0) + 1.0 / (b + 1.0)),
        FisherClass::Interior { a, b } => (a + b) * (a * b - 1.0) / ((a * a - 1.0) * (b * b - 1.0)),
    }
}

/// `C_CR ~ c n³`.
pub fn ccr_degree(params: &PolyParams) -> Result<AsymptoticPrediction> {
    let class = fisher_class(MeasureId::CCr, params)?;
    let c = match class {
        FisherClass::Legendre => 2.0,
        FisherClass::OneSided { b } => 0.5 * (2.0 + b / (b * b - 1.0)),
        FisherClass::Interior { a, b } => 0.5 * (a / (a * a - 1.0) + b / (b * b - 1.0)),
    };
    Ok(AsymptoticPrediction::new(MeasureId::CCr, Regime::Degree, Law::CubicDegree, c, class_label(class)))
}

/// `F ~ c n³`.
pub fn fisher_degree(params: &PolyParams) -> Result<AsymptoticPrediction> {
    let class = fisher_class(MeasureId::Fisher, params)?;
    Ok(AsymptoticPrediction::new(
        MeasureId::Fisher,
        Regime::Degree,
        Law::CubicDegree,
        fisher_coefficient(class),
        class_label(class),
    ))
}

/// `C_FS ~ c n³` with `c = c_F (π/e)² / (2πe)`.
pub fn cfs_degree(params: &PolyParams) -> Result<AsymptoticPrediction> {
    let class = fisher_class(MeasureId::CFs, params)?;
    let c = fisher_coefficient(class) * (PI / E).powi(2) / (2.0 * PI * E);
    Ok(AsymptoticPrediction::new(MeasureId::CFs, Regime::Degree, Law::CubicDegree, c, class_label(class)))
}

/// `V → 1/2`.
pub fn variance_degree() -> AsymptoticPrediction {
    AsymptoticPrediction::new(MeasureId::Variance, Regime::Degree, Law::Constant, 0.5, "α, β > -1")
}

/// `L_S → π/e`.
pub fn ls_degree() -> AsymptoticPrediction {
    AsymptoticPrediction::new(MeasureId::SpreadingLength, Regime::Degree, Law::Constant, PI / E, "α, β > -1")
}

/// `E → ln π - 1 - (α+β) ln 2`.
pub fn e_degree(params: &PolyParams) -> AsymptoticPrediction {
    let c = PI.ln() - 1.0 - (params.alpha() + params.beta()) * LN_2;
    AsymptoticPrediction::new(MeasureId::ShannonE, Regime::Degree, Law::Constant, c, "α, β > -1")
}

/// `I → (α+β) ln 2`.
pub fn i_degree(params: &PolyParams) -> AsymptoticPrediction {
    let c = (params.alpha() + params.beta()) * LN_2;
    AsymptoticPrediction::new(MeasureId::ShannonI, Regime::Degree, Law::Constant, c, "α, β > -1")
}

/// `S → ln π - 1`.
pub fn s_degree() -> AsymptoticPrediction {
    AsymptoticPrediction::new(MeasureId::ShannonS, Regime::Degree, Law::Constant, PI.ln() - 1.0, "α, β > -1")
}

/// Disequilibrium law, classified by `m = min(α, β)` (the law is symmetric
/// under `α ↔ β`): constant for `m > 0`, `ln n` for `m = 0`, `n^{-2m}` for
/// `m < 0`.
pub fn w2_degree(params: &PolyParams) -> Result<AsymptoticPrediction> {
    let (a, b) = (params.alpha(), params.beta());
    let m = a.min(b);
    let p = if m > 0.0 {
        let ln_c = 3f64.ln() + (a + b - 2.0) * LN_2 + ln_gamma_unchecked(a) + ln_gamma_unchecked(b)
            - ln_gamma_unchecked(a + b)
            - 2.0 * PI.ln();
        AsymptoticPrediction::new(MeasureId::W2, Regime::Degree, Law::Constant, ln_c.exp(), "min(α, β) > 0")
    } else if m == 0.0 {
        AsymptoticPrediction::new(MeasureId::W2, Regime::Degree, Law::LogDegree, 1.0, "min(α, β) = 0")
    } else if m > -0.5 {
        AsymptoticPrediction::new(
            MeasureId::W2,
            Regime::Degree,
            Law::PowerDegree { exponent: -2.0 * m },
            1.0,
            "-1/2 < min(α, β) < 0",
        )
    } else {
        return Err(unsupported(MeasureId::W2, "min(α, β) > -1/2 (W2 diverges otherwise)"));
    };
    Ok(p)
}

/// `C_LMC = W₂ L_S`: the disequilibrium law times `π/e`.
pub fn clmc_degree(params: &PolyParams) -> Result<AsymptoticPrediction> {
    let w = w2_degree(params).map_err(|_| unsupported(MeasureId::CLmc, "min(α, β) > -1/2"))?;
    Ok(AsymptoticPrediction { measure: MeasureId::CLmc, coefficient: w.coefficient * PI / E, ..w })
}

// ---------------------------------------------------------------------------
// Parameter regime (α → ∞, fixed n, β)

fn require_beta_above_one(measure: MeasureId, beta: f64) -> Result<()> {
    if beta > 1.0 {
        Ok(())
    } else {
        Err(unsupported(measure, format!("β > 1 (got β = {beta})")))
    }
}

fn require_beta(beta: f64) -> Result<()> {
    if beta > -1.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("β must exceed -1, got {beta}")))
    }
}

/// `C_CR → (1+β+2nβ)(1+β+2n(1+n+β)) / (β²-1)`.
pub fn ccr_param(n: u32, beta: f64) -> Result<AsymptoticPrediction> {
    require_beta_above_one(MeasureId::CCr, beta)?;
    let nf = f64::from(n);
    let c = (1.0 + beta + 2.0 * nf * beta) * (1.0 + beta + 2.0 * nf * (1.0 + nf + beta)) / (beta * beta - 1.0);
    Ok(AsymptoticPrediction::new(MeasureId::CCr, Regime::Alpha, Law::Constant, c, "β > 1"))
}

/// `F ~ (1+β+2nβ) / (4(β²-1)) α²`.
pub fn f_param(n: u32, beta: f64) -> Result<AsymptoticPrediction> {
    require_beta_above_one(MeasureId::Fisher, beta)?;
    let c = (1.0 + beta + 2.0 * f64::from(n) * beta) / (4.0 * (beta * beta - 1.0));
    Ok(AsymptoticPrediction::new(MeasureId::Fisher, Regime::Alpha, Law::QuadraticAlpha, c, "β > 1"))
}

/// `C_FS → (1+β+2nβ) / (8πe(β²-1))`.
pub fn cfs_param(n: u32, beta: f64) -> Result<AsymptoticPrediction> {
    require_beta_above_one(MeasureId::CFs, beta)?;
    let c = (1.0 + beta + 2.0 * f64::from(n) * beta) / (8.0 * PI * E * (beta * beta - 1.0));
    Ok(AsymptoticPrediction::new(MeasureId::CFs, Regime::Alpha, Law::Constant, c, "β > 1"))
}

/// `V ~ 4[(n+1)(n+β+1) + n(n+β)] / α²`.
pub fn variance_param(n: u32, beta: f64) -> Result<AsymptoticPrediction> {
    require_beta(beta)?;
    let nf = f64::from(n);
    let c = 4.0 * ((nf + 1.0) * (nf + beta + 1.0) + nf * (nf + beta));
    Ok(AsymptoticPrediction::new(MeasureId::Variance, Regime::Alpha, Law::InverseSquareAlpha, c, "β > -1"))
}

/// `E ~ (1+α+β) ln 2 + ln(Γ(1+n+β)/n!) - (1+β) ln α`.
pub fn e_param(n: u32, beta: f64) -> Result<AsymptoticPrediction> {
    require_beta(beta)?;
    let c = (1.0 + beta) * LN_2 + ln_gamma_unchecked(1.0 + f64::from(n) + beta) - ln_factorial(n);
    let law = Law::AffineLogAlpha { slope: LN_2, log_coeff: -(1.0 + beta) };
    Ok(AsymptoticPrediction::new(MeasureId::ShannonE, Regime::Alpha, law, c, "β > -1"))
}

/// `I ~ -α ln 2 + β ln α + 1 + 2n + β - β ln 2 - β ψ(1+n+β)`.
pub fn i_param(n: u32, beta: f64) -> Result<AsymptoticPrediction> {
    require_beta(beta)?;
    let nf = f64::from(n);
    let tail = if beta == 0.0 { 0.0 } else { beta * (LN_2 + digamma_unchecked(1.0 + nf + beta)) };
    let c = 1.0 + 2.0 * nf + beta - tail;
    let law = Law::AffineLogAlpha { slope: -LN_2, log_coeff: beta };
    Ok(AsymptoticPrediction::new(MeasureId::ShannonI, Regime::Alpha, law, c, "β > -1"))
}

/// `S ~ -ln α`.
pub fn s_param() -> AsymptoticPrediction {
    AsymptoticPrediction::new(MeasureId::ShannonS, Regime::Alpha, Law::LogAlpha, -1.0, "β > -1")
}

/// `L_S ~ 1/α`.
pub fn ls_param() -> AsymptoticPrediction {
    AsymptoticPrediction::new(MeasureId::SpreadingLength, Regime::Alpha, Law::InverseAlpha, 1.0, "β > -1")
}

/// The bounded part of the entropy, `S + ln α → C(n, β)`, obtained by
/// adding the `E` and `I` laws:
/// `C = ln 2 + ln(Γ(1+n+β)/n!) + 1 + 2n + β - β ψ(1+n+β)`.
pub fn entropy_constant(n: u32, beta: f64) -> Result<f64> {
    let e = e_param(n, beta)?;
    let i = i_param(n, beta)?;
    Ok(e.coefficient + i.coefficient)
}

fn lmc_param_coefficient(n: u32, beta: f64, variant: Variant) -> f64 {
    let nf = f64::from(n);
    let ln_g = ln_gamma_unchecked(1.0 + nf + beta);
    let denominator_power = match variant {
        Variant::Paper => 1.0,
        Variant::DerivedCorrection => 2.0,
    };
    (ln_gamma_unchecked(1.0 + 4.0 * nf + 2.0 * beta)
        - 2.0 * (1.0 + 2.0 * nf + beta) * LN_2
        - 2.0 * ln_factorial(n)
        - denominator_power * ln_g)
        .exp()
}

/// `W₂ ~ c α` with `c = Γ(1+4n+2β) / (2^{2(1+2n+β)} (n!)² Γ(1+n+β))`
/// (the correction variant squares `Γ(1+n+β)`).
pub fn w2_param(n: u32, beta: f64, variant: Variant) -> Result<AsymptoticPrediction> {
    if 2.0 * beta <= -1.0 || !beta.is_finite() {
        return Err(unsupported(MeasureId::W2, "β > -1/2"));
    }
    let c = lmc_param_coefficient(n, beta, variant);
    Ok(AsymptoticPrediction::new(MeasureId::W2, Regime::Alpha, Law::LinearAlpha, c, "β > -1/2"))
}

/// `C_LMC → c` with the same constant as [`w2_param`].
pub fn clmc_param(n: u32, beta: f64, variant: Variant) -> Result<AsymptoticPrediction> {
    let w = w2_param(n, beta, variant).map_err(|_| unsupported(MeasureId::CLmc, "β > -1/2"))?;
    Ok(AsymptoticPrediction { measure: MeasureId::CLmc, law: Law::Constant, ..w })
}

/// Large-`α` predictor of the Lq-norm `N_p[P_n]`:
/// `Γ(α+n+1)/n! · Γ(1+np+β)/Γ(2+α+np+β) · 2^{1+α+β}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPredictor {
    n: u32,
    beta: f64,
    p: f64,
}

impl NormPredictor {
    pub fn ln_value(&self, alpha: f64) -> f64 {
        let nf = f64::from(self.n);
        let np = nf * self.p;
        ln_gamma_unchecked(alpha + nf + 1.0) - ln_factorial(self.n) + ln_gamma_unchecked(1.0 + np + self.beta)
            - ln_gamma_unchecked(2.0 + alpha + np + self.beta)
            + (1.0 + alpha + self.beta) * LN_2
    }

    pub fn value(&self, alpha: f64) -> f64 {
        self.ln_value(alpha).exp()
    }
}

pub fn np_param(n: u32, beta: f64, p: f64) -> Result<NormPredictor> {
    require_beta(beta)?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(domain(format!("Lq-norm order must be positive, got {p}")));
    }
    Ok(NormPredictor { n, beta, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(a: f64, b: f64) -> PolyParams {
        PolyParams::new(0, a, b).unwrap()
    }

    #[test]
    fn ccr_degree_examples() {
        assert_eq!(ccr_degree(&p(0.0, 0.0)).unwrap().coefficient, 2.0);
        assert_relative_eq!(ccr_degree(&p(3.0, 3.0)).unwrap().coefficient, 3.0 / 8.0, max_relative = 1e-15);
        assert_relative_eq!(ccr_degree(&p(0.0, 2.0)).unwrap().coefficient, 4.0 / 3.0, max_relative = 1e-15);
        assert_eq!(ccr_degree(&p(2.0, 0.0)).unwrap().coefficient, ccr_degree(&p(0.0, 2.0)).unwrap().coefficient);
        for (a, b) in [(0.5, 0.5), (0.0, 1.0), (2.0, 0.5), (-0.5, 2.0)] {
            assert!(matches!(ccr_degree(&p(a, b)), Err(Error::UnsupportedClass { .. })));
        }
    }

    #[test]
    fn ccr_param_examples() {
        assert_relative_eq!(ccr_param(0, 2.0).unwrap().coefficient, 3.0, max_relative = 1e-15);
        assert_relative_eq!(ccr_param(1, 2.0).unwrap().coefficient, 77.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(ccr_param(0, 3.0).unwrap().coefficient, 2.0, max_relative = 1e-15);
        assert!(ccr_param(0, 1.0).is_err());
    }

    #[test]
    fn degree_limits() {
        assert_relative_eq!(cfs_degree(&p(0.0, 0.0)).unwrap().coefficient, 2.0 * PI / E.powi(3), max_relative = 1e-15);
        assert_relative_eq!(ls_degree().coefficient, 1.155727349790921, max_relative = 1e-15);
        assert_relative_eq!(e_degree(&p(2.0, 3.0)).coefficient, PI.ln() - 1.0 - 5.0 * LN_2, max_relative = 1e-15);
        assert_eq!(fisher_degree(&p(0.0, 0.0)).unwrap().coefficient, 4.0);
    }

    #[test]
    fn w2_degree_classes() {
        assert_relative_eq!(w2_degree(&p(2.0, 2.0)).unwrap().coefficient, 2.0 / (PI * PI), max_relative = 1e-14);
        assert_relative_eq!(clmc_degree(&p(1.0, 1.0)).unwrap().coefficient, 3.0 / (PI * E), max_relative = 1e-14);
        assert_relative_eq!(clmc_degree(&p(2.0, 2.0)).unwrap().coefficient, 2.0 / (PI * E), max_relative = 1e-14);
        let log = clmc_degree(&p(3.0, 0.0)).unwrap();
        assert_eq!(log.law, Law::LogDegree);
        assert_relative_eq!(log.coefficient, PI / E, max_relative = 1e-15);
        assert_eq!(w2_degree(&p(0.0, 3.0)).unwrap().law, Law::LogDegree);
        let power = w2_degree(&p(2.0, -0.25)).unwrap();
        assert_eq!(power.law, Law::PowerDegree { exponent: 0.5 });
        assert!(w2_degree(&p(2.0, -0.5)).is_err());
    }

    #[test]
    fn param_examples() {
        assert_relative_eq!(f_param(0, 2.0).unwrap().coefficient, 0.25, max_relative = 1e-15);
        assert_relative_eq!(cfs_param(1, 2.0).unwrap().coefficient, 7.0 / (24.0 * PI * E), max_relative = 1e-14);
        assert_relative_eq!(clmc_param(0, 2.0, Variant::Paper).unwrap().coefficient, 3.0 / 16.0, max_relative = 1e-14);
        assert_relative_eq!(
            clmc_param(0, 2.0, Variant::DerivedCorrection).unwrap().coefficient,
            3.0 / 32.0,
            max_relative = 1e-14
        );
        assert!(f_param(0, 1.0).is_err() && cfs_param(2, 0.5).is_err());
        assert_eq!(w2_param(0, 2.0, Variant::Paper).unwrap().predict(400.0), 75.0);
    }

    #[test]
    fn entropy_laws_add_up() {
        let (n, beta) = (2, 1.5);
        let e = e_param(n, beta).unwrap();
        let i = i_param(n, beta).unwrap();
        for alpha in [10.0, 1e3, 1e6] {
            let s = e.predict(alpha) + i.predict(alpha);
            let want = -alpha.ln() + entropy_constant(n, beta).unwrap();
            assert!((s - want).abs() < 1e-9 * alpha, "{alpha}");
        }
        assert_eq!(s_param().predict(E), -1.0);
        assert_eq!(ls_param().predict(4.0), 0.25);
    }

    #[test]
    fn norm_predictor_beta_integral() {
        // n = 0: the Beta integral 2^{1+α+β} Γ(α+1)Γ(β+1)/Γ(α+β+2), exact
        let pr = np_param(0, 1.5, 3.0).unwrap();
        let alpha = 7.0;
        let want = (2.5 + alpha) * LN_2 + ln_gamma_unchecked(alpha + 1.0) + ln_gamma_unchecked(2.5)
            - ln_gamma_unchecked(alpha + 3.5);
        assert_relative_eq!(pr.ln_value(alpha), want, max_relative = 1e-14);
        assert!(np_param(0, 0.0, 0.0).is_err() && np_param(0, -1.0, 2.0).is_err());
    }

    #[test]
    fn consistency_identities() {
        for (a, b) in [(0.0, 0.0), (0.0, 2.0), (3.0, 0.0), (2.0, 3.0), (1.5, 7.0)] {
            let q = p(a, b);
            let ccr = ccr_degree(&q).unwrap().coefficient;
            let f = fisher_degree(&q).unwrap().coefficient;
            assert_relative_eq!(ccr, f * variance_degree().coefficient, max_relative = 1e-14);
            let cfs = cfs_degree(&q).unwrap().coefficient;
            let ls = ls_degree().coefficient;
            assert_relative_eq!(cfs, f * ls * ls / (2.0 * PI * E), max_relative = 1e-14);
        }
        for n in 0..5 {
            for beta in [1.5, 2.0, 3.0, 10.0] {
                let ccr = ccr_param(n, beta).unwrap().coefficient;
                let prod = f_param(n, beta).unwrap().coefficient * variance_param(n, beta).unwrap().coefficient;
                assert_relative_eq!(ccr, prod, max_relative = 1e-14);
            }
        }
    }
}
