use std::f64::consts::{E, PI};

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use jcx_core::asymptotics::{self, AsymptoticPrediction, Law, Variant};
use jcx_core::measures::{self, Extended, MeasureOptions, MeasureSet};
use jcx_core::quadrature::{gauss_jacobi_rule, IntegrationOptions};
use jcx_core::PolyParams;

use crate::output::{emit, measure_csv, num};
use crate::{
    AsymArgs, Format, LmcCompareArgs, MeasureArg, MeasureArgs, PolyArgs, RegimeArg, RuleArgs, SweepArgs, VariantArg,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] jcx_core::Error),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 invalid input, 3 unsupported asymptotic class, 4 budget exhausted.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(jcx_core::Error::Domain(_)) => 2,
            CliError::Core(jcx_core::Error::UnsupportedClass { .. }) => 3,
            CliError::Core(jcx_core::Error::Budget { .. }) => 4,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn params(poly: &PolyArgs) -> Result<PolyParams> {
    Ok(PolyParams::new(poly.degree, poly.alpha, poly.beta)?)
}

fn integration(n: u32, tol: Option<f64>, max_evals: u64) -> Result<IntegrationOptions> {
    let tol = tol.unwrap_or_else(|| measures::default_tolerance(n));
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {tol}")));
    }
    if max_evals == 0 {
        return Err(usage("the evaluation budget must be positive"));
    }
    Ok(IntegrationOptions { tol, max_evals, ..IntegrationOptions::default() })
}

/// The exact routes need Gauss–Jacobi rules of up to `2n + 2` nodes.
fn check_nodes(n: u32, max_nodes: usize) -> Result<()> {
    let needed = 2 * n as usize + 2;
    if needed > max_nodes {
        return Err(usage(format!("degree {n} needs a {needed}-node rule, above --max-nodes {max_nodes}")));
    }
    Ok(())
}

fn variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Paper => Variant::Paper,
        VariantArg::Derived => Variant::DerivedCorrection,
    }
}

pub fn measure(args: &MeasureArgs, max_evals: u64) -> Result<()> {
    let p = params(&args.poly)?;
    check_nodes(p.n(), args.max_nodes)?;
    let opts =
        MeasureOptions { integration: integration(p.n(), args.tol, max_evals)?, ..MeasureOptions::for_params(&p) };
    info!("measuring {p:?} with tol {:e}", opts.integration.tol);
    let set = MeasureSet::compute(&p, &opts)?;
    if args.check_entropy {
        let checked = measures::shannon_entropy_checked(&p, &opts.integration)?;
        debug!("entropy routes agree: S = {}", checked.value);
    }
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&set)? + "\n",
        Format::Csv => measure_csv(&set),
    };
    emit(args.output.out.as_deref(), &text)?;
    Ok(())
}

/// Large-α predictor of the Lq-norm, reported at one α.
#[derive(Serialize)]
struct NormPrediction {
    measure: &'static str,
    regime: &'static str,
    law: &'static str,
    n: u32,
    beta: f64,
    p: f64,
    alpha: f64,
    ln_value: f64,
    applicability: &'static str,
}

enum Predictor {
    Law(AsymptoticPrediction),
    Norm(asymptotics::NormPredictor),
}

impl Predictor {
    fn ln_predict(&self, t: f64) -> (f64, f64) {
        match self {
            Predictor::Law(p) => {
                let v = p.predict(t);
                (v, v.abs().ln())
            }
            Predictor::Norm(p) => (p.value(t), p.ln_value(t)),
        }
    }
}

fn predictor(regime: RegimeArg, measure: MeasureArg, p: &PolyParams, order: f64, v: Variant) -> Result<Predictor> {
    use asymptotics as a;
    let (n, beta) = (p.n(), p.beta());
    let law = match (regime, measure) {
        (RegimeArg::Degree, MeasureArg::Variance) => a::variance_degree(),
        (RegimeArg::Degree, MeasureArg::Fisher) => a::fisher_degree(p)?,
        (RegimeArg::Degree, MeasureArg::E) => a::e_degree(p),
        (RegimeArg::Degree, MeasureArg::I) => a::i_degree(p),
        (RegimeArg::Degree, MeasureArg::S) => a::s_degree(),
        (RegimeArg::Degree, MeasureArg::Ls) => a::ls_degree(),
        (RegimeArg::Degree, MeasureArg::W2) => a::w2_degree(p)?,
        (RegimeArg::Degree, MeasureArg::Ccr) => a::ccr_degree(p)?,
        (RegimeArg::Degree, MeasureArg::Cfs) => a::cfs_degree(p)?,
        (RegimeArg::Degree, MeasureArg::Clmc) => a::clmc_degree(p)?,
        (RegimeArg::Degree, MeasureArg::Np) => {
            return Err(jcx_core::Error::UnsupportedClass {
                measure: "lq_norm",
                requirement: "the alpha regime (no degree law is known)".into(),
            }
            .into())
        }
        (RegimeArg::Alpha, MeasureArg::Variance) => a::variance_param(n, beta)?,
        (RegimeArg::Alpha, MeasureArg::Fisher) => a::f_param(n, beta)?,
        (RegimeArg::Alpha, MeasureArg::E) => a::e_param(n, beta)?,
        (RegimeArg::Alpha, MeasureArg::I) => a::i_param(n, beta)?,
        (RegimeArg::Alpha, MeasureArg::S) => a::s_param(),
        (RegimeArg::Alpha, MeasureArg::Ls) => a::ls_param(),
        (RegimeArg::Alpha, MeasureArg::W2) => a::w2_param(n, beta, v)?,
        (RegimeArg::Alpha, MeasureArg::Ccr) => a::ccr_param(n, beta)?,
        (RegimeArg::Alpha, MeasureArg::Cfs) => a::cfs_param(n, beta)?,
        (RegimeArg::Alpha, MeasureArg::Clmc) => a::clmc_param(n, beta, v)?,
        (RegimeArg::Alpha, MeasureArg::Np) => return Ok(Predictor::Norm(a::np_param(n, beta, order)?)),
    };
    Ok(Predictor::Law(law))
}

pub fn asym(args: &AsymArgs) -> Result<()> {
    let p = params(&args.poly)?;
    let text = match predictor(args.regime, args.measure, &p, args.p, variant(args.variant))? {
        Predictor::Law(law) => serde_json::to_string_pretty(&law)?,
        Predictor::Norm(pred) => serde_json::to_string_pretty(&NormPrediction {
            measure: "lq_norm",
            regime: "alpha",
            law: "Gamma(alpha+n+1)/n! Gamma(1+np+beta)/Gamma(2+alpha+np+beta) 2^(1+alpha+beta)",
            n: p.n(),
            beta: p.beta(),
            p: args.p,
            alpha: p.alpha(),
            ln_value: pred.ln_value(p.alpha()),
            applicability: "beta > -1, p > 0",
        })?,
    };
    emit(args.out.as_deref(), &(text + "\n"))?;
    Ok(())
}

/// Parses `start:stop:factor` into a geometric grid.
fn geometric_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| usage(format!("grid `{text}`: {e}")))?;
    let [start, stop, factor] = parts[..] else {
        return Err(usage(format!("grid `{text}` must look like start:stop:factor")));
    };
    if !(start > 0.0 && stop >= start && factor > 1.0 && stop.is_finite()) {
        return Err(usage(format!("grid `{text}` needs 0 < start <= stop and factor > 1")));
    }
    let mut out = Vec::new();
    let mut v = start;
    while v <= stop * (1.0 + 1e-12) {
        out.push(v);
        v *= factor;
    }
    Ok(out)
}

/// Computed value of `measure` with an absolute error estimate.
fn computed(measure: MeasureArg, p: &PolyParams, opts: &IntegrationOptions, order: f64) -> Result<(f64, f64)> {
    let infinite = || usage(format!("{measure:?} is infinite for {p:?}"));
    let finite = |v: Extended| v.finite().ok_or_else(infinite);
    let value = match measure {
        MeasureArg::Variance => (measures::variance(p), 0.0),
        MeasureArg::Fisher => (finite(measures::fisher_info(p))?, 0.0),
        MeasureArg::E => {
            let r = measures::shannon_e_numeric(p, opts)?;
            (r.value, r.abs_error_estimate)
        }
        MeasureArg::I => (measures::shannon_i(p), 0.0),
        MeasureArg::S => {
            let r = measures::shannon_entropy(p, opts)?;
            (r.value, r.abs_error_estimate)
        }
        MeasureArg::Ls => {
            let r = measures::spreading_length(p, opts)?;
            (r.value, r.abs_error_estimate)
        }
        MeasureArg::W2 => (measures::disequilibrium_w2(p)?, 0.0),
        MeasureArg::Ccr => (finite(measures::cramer_rao(p))?, 0.0),
        MeasureArg::Cfs => {
            let f = finite(measures::fisher_info(p))?;
            let l = measures::spreading_length(p, opts)?;
            let v = f * l.value * l.value / (2.0 * PI * E);
            (v, 2.0 * v * l.abs_error_estimate / l.value)
        }
        MeasureArg::Clmc => {
            let w = measures::disequilibrium_w2(p)?;
            let l = measures::spreading_length(p, opts)?;
            (w * l.value, w * l.abs_error_estimate)
        }
        MeasureArg::Np => {
            let (ln_v, rel_err) = measures::ln_lq_norm(p, order, opts)?;
            let v = ln_v.exp();
            (v, v * rel_err)
        }
    };
    Ok(value)
}

/// One row of a sweep report.
#[derive(Debug, Clone, Copy)]
struct SweepRow {
    sweep_value: f64,
    numeric: f64,
    predicted: f64,
    ratio: f64,
    error_estimate: f64,
}

pub fn sweep(args: &SweepArgs, max_evals: u64) -> Result<()> {
    let v = variant(args.variant);
    let grid: Vec<f64> = match (args.regime, &args.n_grid, &args.alpha_grid) {
        (RegimeArg::Degree, Some(grid), None) => {
            let mut ns: Vec<f64> = geometric_grid(grid)?.into_iter().map(f64::round).collect();
            ns.dedup();
            ns
        }
        (RegimeArg::Alpha, None, Some(grid)) => geometric_grid(grid)?,
        (RegimeArg::Degree, _, _) => return Err(usage("the degree regime needs --n-grid")),
        (RegimeArg::Alpha, _, _) => return Err(usage("the alpha regime needs --alpha-grid")),
    };
    let point = |t: f64| -> Result<PolyParams> {
        let params = match args.regime {
            RegimeArg::Degree => {
                if t > f64::from(u32::MAX) {
                    return Err(usage(format!("degree {t} out of range")));
                }
                PolyParams::new(t as u32, args.poly.alpha, args.poly.beta)?
            }
            RegimeArg::Alpha => PolyParams::new(args.poly.degree, t, args.poly.beta)?,
        };
        check_nodes(params.n(), args.max_nodes)?;
        Ok(params)
    };
    // validate the class once, before any numerical work
    let first = point(grid[0])?;
    predictor(args.regime, args.measure, &first, args.p, v)?;

    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&t| -> Result<SweepRow> {
            let p = point(t)?;
            let opts = integration(p.n(), args.tol, max_evals)?;
            let pred = predictor(args.regime, args.measure, &p, args.p, v)?;
            let (numeric, error_estimate) = computed(args.measure, &p, &opts, args.p)?;
            let (predicted, ln_predicted) = pred.ln_predict(t);
            let ratio = match args.measure {
                // the norm and its predictor may overflow separately
                MeasureArg::Np => (measures::ln_lq_norm(&p, args.p, &opts)?.0 - ln_predicted).exp(),
                _ => numeric / predicted,
            };
            debug!("sweep {t}: numeric {numeric}, predicted {predicted}");
            Ok(SweepRow { sweep_value: t, numeric, predicted, ratio, error_estimate })
        })
        .collect::<Result<_>>()?;

    let mut text = String::from("sweep_value,numeric,predicted,ratio,error_estimate\n");
    for r in &rows {
        text.push_str(&format!(
            "{},{},{},{},{}\n",
            num(r.sweep_value),
            num(r.numeric),
            num(r.predicted),
            num(r.ratio),
            num(r.error_estimate)
        ));
    }
    emit(args.out.as_deref(), &text)?;
    Ok(())
}

fn lmc_constant(alpha: f64, beta: f64) -> Option<f64> {
    let p = PolyParams::new(0, alpha, beta).ok()?;
    let law = asymptotics::clmc_degree(&p).ok()?;
    (law.law == Law::Constant).then_some(law.coefficient)
}

fn lmc_numeric(n: u32, alpha: f64, beta: f64, max_evals: u64) -> Result<f64> {
    let p = PolyParams::new(n, alpha, beta)?;
    Ok(measures::lmc(&p, &integration(n, None, max_evals)?)?)
}

pub fn lmc_compare(args: &LmcCompareArgs, max_evals: u64) -> Result<()> {
    let lambdas = geometric_grid(&args.lambda_grid)?;
    if let Some(&bad) = lambdas.iter().find(|&&l| l <= 1.0) {
        return Err(usage(format!("λ must exceed 1, got {bad}")));
    }
    let betas: Vec<(String, Option<f64>)> = args
        .betas
        .iter()
        .map(|tok| {
            let tok = tok.trim();
            if tok == "l-2" {
                Ok((tok.to_owned(), None))
            } else {
                tok.parse::<f64>().map(|b| (tok.to_owned(), Some(b))).map_err(|e| usage(format!("β `{tok}`: {e}")))
            }
        })
        .collect::<Result<_>>()?;

    let mut header =
        vec!["lambda", "beta_choice", "beta", "alpha_lambda_minus_2", "alpha_lambda_minus_half", "gegenbauer"]
            .into_iter()
            .map(str::to_owned)
            .collect::<Vec<_>>();
    if let Some(n) = args.degree {
        header.push(format!("numeric_alpha_lambda_minus_2_n{n}"));
        header.push(format!("numeric_alpha_lambda_minus_half_n{n}"));
    }
    let cell = |v: Option<f64>| v.map_or_else(|| "unsupported".to_owned(), num);
    let jobs: Vec<(f64, &String, f64)> =
        lambdas.iter().flat_map(|&l| betas.iter().map(move |(label, b)| (l, label, b.unwrap_or(l - 2.0)))).collect();
    let lines: Vec<String> = jobs
        .par_iter()
        .map(|&(l, label, beta)| -> Result<String> {
            let mut fields = vec![
                num(l),
                label.clone(),
                num(beta),
                cell(lmc_constant(l - 2.0, beta)),
                cell(lmc_constant(l - 0.5, beta)),
                cell(lmc_constant(l - 0.5, l - 0.5)),
            ];
            if let Some(n) = args.degree {
                for alpha in [l - 2.0, l - 0.5] {
                    fields.push(match lmc_numeric(n, alpha, beta, max_evals) {
                        Ok(v) => num(v),
                        Err(CliError::Core(jcx_core::Error::Domain(_))) => "unsupported".to_owned(),
                        Err(e) => return Err(e),
                    });
                }
            }
            Ok(fields.join(","))
        })
        .collect::<Result<_>>()?;

    let mut text = header.join(",") + "\n";
    for line in lines {
        text.push_str(&line);
        text.push('\n');
    }
    emit(args.out.as_deref(), &text)?;
    Ok(())
}

#[derive(Serialize)]
struct RuleJson<'a> {
    a: f64,
    b: f64,
    nodes: &'a [f64],
    weights: Vec<f64>,
}

pub fn rule(args: &RuleArgs) -> Result<()> {
    if args.m > args.max_nodes {
        return Err(usage(format!("rule order {} exceeds --max-nodes {}", args.m, args.max_nodes)));
    }
    let rule = gauss_jacobi_rule(args.a, args.b, args.m)?;
    let weights = rule.weights();
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(jcx_core::Error::Overflow(format!("weights of the ({}, {}) rule", args.a, args.b)).into());
    }
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("index,node,weight\n");
            for (i, (x, w)) in rule.nodes().iter().zip(&weights).enumerate() {
                s.push_str(&format!("{i},{},{}\n", num(*x), num(*w)));
            }
            s
        }
        Format::Json => {
            serde_json::to_string_pretty(&RuleJson { a: args.a, b: args.b, nodes: rule.nodes(), weights })? + "\n"
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(())
}
