//! Dispersion, entropic and complexity-like measures of orthonormal Jacobi
//! polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: log-gamma, digamma, beta, Pochhammer and `2F1(1,b;c;-1)`.
//! * [`jacobi`]: classical and orthonormal Jacobi polynomials, derivatives,
//!   zeros, normalisation constants and Rakhmanov densities.
//! * [`linalg`]: symmetric tridiagonal eigensolver used for zeros and rules.
//! * [`quadrature`]: Gauss–Jacobi rules and a zero-aware tanh-sinh integrator.
//! * [`measures`]: variance, Fisher information, Shannon functionals,
//!   Lq-norms, disequilibrium and the Cramér–Rao, Fisher–Shannon and LMC
//!   complexities, each with an independent numerical route.
//! * [`asymptotics`]: leading-order predictors in the degree and parameter
//!   regimes, with explicit applicability classes.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod jacobi;
pub mod linalg;
pub mod measures;
pub mod quadrature;
pub mod scaled;
pub mod specfun;

pub use error::{Error, Result};
pub use jacobi::PolyParams;
