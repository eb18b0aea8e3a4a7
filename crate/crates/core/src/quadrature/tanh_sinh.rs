use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::jacobi::{zeros, PolyParams};
use crate::scaled::NeumaierSum;

/// Highest refinement level per cell (step `2^-12`).
pub const LEVEL_CAP: u32 = 12;

/// Default cap on integrand evaluations for one integral.
pub const DEFAULT_MAX_EVALS: u64 = 50_000_000;

const MIN_LEVEL: u32 = 3;
/// Smallest endpoint distance generated next to `±1`.
const MIN_DISTANCE: f64 = 1e-300;
const INTERIOR_MIN_DISTANCE: f64 = 1e-20;
/// Level-0 terms below this fraction of the largest term end the abscissa range.
const TRUNCATION: f64 = 1e-20;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: u64,
}

/// Knobs for the tanh-sinh integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    /// Absolute tolerance for the whole integral, split evenly over cells.
    pub tol: f64,
    pub max_evals: u64,
    pub level_cap: u32,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_evals: DEFAULT_MAX_EVALS, level_cap: LEVEL_CAP }
    }
}

impl IntegrationOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// An abscissa together with accurately computed complements.
///
/// Next to `x = ±1` the distances come straight from the tanh-sinh
/// transform, so `1 - x` keeps full relative precision even when `x` itself
/// rounds to `1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub one_minus_x: f64,
    pub one_plus_x: f64,
}

impl Point {
    pub fn new(x: f64) -> Self {
        Self { x, one_minus_x: 1.0 - x, one_plus_x: 1.0 + x }
    }
}

struct Cell {
    lo: f64,
    hi: f64,
}

impl Cell {
    fn half(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    fn centre(&self) -> Point {
        let x = 0.5 * (self.lo + self.hi);
        Point { x, one_minus_x: (1.0 - self.hi) + self.half(), one_plus_x: (1.0 + self.lo) + self.half() }
    }

    /// The two points at parameter `t > 0` and their common weight
    /// `dx/dt`. `None` when the point would coincide with the endpoint.
    fn pair(&self, t: f64) -> (Option<Point>, Option<Point>, f64) {
        let r = self.half();
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        let q = 2.0 * e / (1.0 + e);
        let w = r * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let d = r * q;
        let far = 2.0 * r - d;

        let right_x = self.hi - d;
        let right = if self.usable(d, self.hi, right_x) {
            Some(Point { x: right_x, one_minus_x: (1.0 - self.hi) + d, one_plus_x: (1.0 + self.lo) + far })
        } else {
            None
        };
        let left_x = self.lo + d;
        let left = if self.usable(d, self.lo, left_x) {
            Some(Point { x: left_x, one_minus_x: (1.0 - self.hi) + far, one_plus_x: (1.0 + self.lo) + d })
        } else {
            None
        };
        (left, right, w)
    }

    fn usable(&self, d: f64, end: f64, x: f64) -> bool {
        if d < MIN_DISTANCE {
            return false;
        }
        // Interior endpoints are zeros of the polynomial; closer than this the
        // remaining contribution of a log-singular integrand is below roundoff.
        end.abs() == 1.0 || (x != end && d > INTERIOR_MIN_DISTANCE * self.half())
    }
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn take(&mut self, k: u64) -> bool {
        if self.used + k > self.max {
            return false;
        }
        self.used += k;
        true
    }
}

fn eval(g: &impl Fn(Point) -> f64, p: Point) -> Result<f64> {
    let v = g(p);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { node: p.x })
    }
}

fn integrate_cell(
    cell: &Cell,
    g: &impl Fn(Point) -> f64,
    tol: f64,
    level_cap: u32,
    budget: &mut Budget,
    overall: &mut IntegralResult,
) -> Result<IntegralResult> {
    let exhausted = |value: f64, err: f64, used: u64, overall: &IntegralResult| Error::Budget {
        best: IntegralResult {
            value: overall.value + value,
            abs_error_estimate: overall.abs_error_estimate + err,
            evaluations: used,
        },
    };

    // Level 0 fixes the abscissa range on each side.
    let mut terms_left = Vec::new();
    let mut terms_right = Vec::new();
    let centre_w = cell.half() * FRAC_PI_2;
    if !budget.take(1) {
        return Err(exhausted(0.0, f64::INFINITY, budget.used, overall));
    }
    let centre = centre_w * eval(g, cell.centre())?;
    let mut k = 1u32;
    loop {
        let (l, r, w) = cell.pair(f64::from(k));
        if l.is_none() && r.is_none() {
            break;
        }
        let cost = u64::from(l.is_some()) + u64::from(r.is_some());
        if !budget.take(cost) {
            return Err(exhausted(0.0, f64::INFINITY, budget.used, overall));
        }
        terms_left.push(match l {
            Some(p) => Some(w * eval(g, p)?),
            None => None,
        });
        terms_right.push(match r {
            Some(p) => Some(w * eval(g, p)?),
            None => None,
        });
        k += 1;
    }
    let biggest = terms_left.iter().chain(&terms_right).flatten().fold(centre.abs(), |m, t| m.max(t.abs()));
    let reach = |terms: &[Option<f64>]| -> f64 {
        let last =
            terms.iter().rposition(|t| matches!(t, Some(v) if v.abs() > TRUNCATION * biggest)).map_or(0, |i| i + 1);
        // one extra unit beyond the last significant level-0 term
        (last + 1).min(terms.iter().take_while(|t| t.is_some()).count()) as f64
    };
    let t_left = reach(&terms_left);
    let t_right = reach(&terms_right);

    let mut sum = NeumaierSum::new();
    sum.push(centre);
    let mut magnitude = centre.abs();
    for (i, t) in terms_left.iter().enumerate() {
        if (i + 1) as f64 <= t_left {
            if let Some(v) = t {
                sum.push(*v);
                magnitude += v.abs();
            }
        }
    }
    for (i, t) in terms_right.iter().enumerate() {
        if (i + 1) as f64 <= t_right {
            if let Some(v) = t {
                sum.push(*v);
                magnitude += v.abs();
            }
        }
    }
    let mut estimate = sum.total();
    let mut h = 1.0;
    let mut err = f64::INFINITY;
    for level in 1..=level_cap {
        h *= 0.5;
        let mut fresh = NeumaierSum::new();
        let mut fresh_mag = 0.0;
        let mut t = h;
        let t_max = t_left.max(t_right);
        while t <= t_max {
            let (l, r, w) = cell.pair(t);
            let l = l.filter(|_| t <= t_left);
            let r = r.filter(|_| t <= t_right);
            let cost = u64::from(l.is_some()) + u64::from(r.is_some());
            if !budget.take(cost) {
                return Err(exhausted(estimate, err, budget.used, overall));
            }
            for p in [l, r].into_iter().flatten() {
                let v = w * eval(g, p)?;
                fresh.push(v);
                fresh_mag += v.abs();
            }
            t += 2.0 * h;
        }
        // Level sums carry the step: I_h = h Σ_h, Σ_h = Σ_{2h} + fresh.
        let previous = estimate;
        let coarse_sum = previous / (2.0 * h);
        estimate = h * (coarse_sum + fresh.total());
        magnitude = 0.5 * magnitude + h * fresh_mag;
        err = (estimate - previous).abs();
        let roundoff = 64.0 * f64::EPSILON * magnitude;
        if level >= MIN_LEVEL && (err <= tol || err <= roundoff) {
            return Ok(IntegralResult { value: estimate, abs_error_estimate: err, evaluations: 0 });
        }
    }
    Err(exhausted(estimate, err, budget.used, overall))
}

/// Integrates `g` over `[breakpoints[0], breakpoints[last]]`, applying
/// tanh-sinh quadrature on each cell between consecutive breakpoints and
/// summing the cells in ascending order.
pub fn integrate_cells(
    breakpoints: &[f64],
    g: impl Fn(Point) -> f64,
    opts: &IntegrationOptions,
) -> Result<IntegralResult> {
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain("breakpoints must be sorted and contain at least two entries"));
    }
    if !(opts.tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let cells: Vec<Cell> =
        breakpoints.windows(2).filter(|w| w[1] > w[0]).map(|w| Cell { lo: w[0], hi: w[1] }).collect();
    let cell_tol = opts.tol / cells.len().max(1) as f64;
    let mut budget = Budget { used: 0, max: opts.max_evals };
    let mut value = NeumaierSum::new();
    let mut overall = IntegralResult { value: 0.0, abs_error_estimate: 0.0, evaluations: 0 };
    for cell in &cells {
        let r = integrate_cell(cell, &g, cell_tol, opts.level_cap, &mut budget, &mut overall)?;
        value.push(r.value);
        overall.value = value.total();
        overall.abs_error_estimate += r.abs_error_estimate;
    }
    overall.evaluations = budget.used;
    Ok(overall)
}

/// `∫_{-1}^{1} g(x) dx` for integrands whose only singular points are the
/// zeros of `P_n^{(α,β)}` and the endpoints.
pub fn integrate_log_singular(
    params: &PolyParams,
    g: impl Fn(f64) -> f64,
    opts: &IntegrationOptions,
) -> Result<IntegralResult> {
    integrate_cells(&breakpoints(params)?, |p| g(p.x), opts)
}

/// `{-1} ∪ zeros ∪ {1}`.
pub fn breakpoints(params: &PolyParams) -> Result<Vec<f64>> {
    let mut pts = Vec::with_capacity(params.n() as usize + 2);
    pts.push(-1.0);
    pts.extend(zeros(params)?);
    pts.push(1.0);
    Ok(pts)
}
