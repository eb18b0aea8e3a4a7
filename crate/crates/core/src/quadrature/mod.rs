//! Quadrature: Gauss–Jacobi rules and a tanh-sinh integrator that splits
//! `[-1, 1]` at the zeros of a Jacobi polynomial.

mod gauss_jacobi;
mod tanh_sinh;

pub use gauss_jacobi::{gauss_jacobi_rule, integrate_weighted, integrate_weighted_scaled, QuadRule, MAX_RULE_ORDER};
pub use tanh_sinh::{
    breakpoints, integrate_cells, integrate_log_singular, IntegralResult, IntegrationOptions, Point, DEFAULT_MAX_EVALS,
    LEVEL_CAP,
};
