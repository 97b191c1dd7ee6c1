//! The Gamma-weighted integral operator
//!
//! ```text
//! R f(z) = 1 / (Gamma(p+delta) (1-mu)^(p+delta)) * int_0^inf t^(delta-1) e^(-t/(1-mu)) f(z t) dt
//! ```
//!
//! acting on `f(z) = z^p - sum a_k z^k`. On monomials it reduces to multiplying
//! `a_k` by `Gamma(k+delta)/Gamma(p+delta) * (1-mu)^(k-p)`, which is the production
//! path ([`apply_rafid_series`]). [`rafid_integral_oracle`] evaluates the integral
//! itself with Gauss-Laguerre quadrature and serves as an independent check.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::quadrature::LaguerreRule;
use crate::series::{Analytic, TruncatedPSeries};

/// Products longer than this are accumulated as a sum of logarithms.
const LOG_SPACE_SPAN: u32 = 30;

/// Smallest `delta` the integral oracle accepts; below it the `t^(delta-1)`
/// singularity at the origin is too strong for the quadrature.
pub const ORACLE_MIN_DELTA: f64 = 0.05;

pub const DEFAULT_ORACLE_NODES: usize = 256;

/// `(mu, delta)` with `0 <= mu < 1` and `0 <= delta <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    mu: f64,
    delta: f64,
}

impl OperatorParams {
    pub fn new(mu: f64, delta: f64) -> Result<Self> {
        let mut problems = Vec::new();
        if !(0.0..1.0).contains(&mu) {
            problems.push(format!("mu must lie in [0, 1) (got {mu})"));
        }
        if !(0.0..=1.0).contains(&delta) {
            problems.push(format!("delta must lie in [0, 1] (got {delta})"));
        }
        if problems.is_empty() {
            Ok(Self { mu, delta })
        } else {
            Err(Error::InvalidParams(problems))
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// `Gamma(k+delta) / Gamma(p+delta)` as the product `prod_{j=p}^{k-1} (j+delta)`.
///
/// # Panics
///
/// If `k < p`.
pub fn gamma_ratio(k: u32, p: u32, delta: f64) -> f64 {
    assert!(k >= p, "gamma_ratio needs k >= p (k = {k}, p = {p})");
    let factors = (p..k).map(|j| j as f64 + delta);
    if k - p > LOG_SPACE_SPAN {
        factors.map(f64::ln).sum::<f64>().exp()
    } else {
        factors.product()
    }
}

/// The multiplier applied to `a_k`: `gamma_ratio(k, p, delta) * (1-mu)^(k-p)`.
pub fn rafid_weight(k: u32, p: u32, params: OperatorParams) -> f64 {
    assert!(k >= p, "rafid_weight needs k >= p (k = {k}, p = {p})");
    let span = k - p;
    if span > LOG_SPACE_SPAN {
        let ln_ratio: f64 = (p..k).map(|j| (j as f64 + params.delta).ln()).sum();
        (ln_ratio + span as f64 * (1.0 - params.mu).ln()).exp()
    } else {
        gamma_ratio(k, p, params.delta) * (1.0 - params.mu).powi(span as i32)
    }
}

/// Image of `f` under the operator, in closed series form.
pub fn apply_rafid_series(f: &TruncatedPSeries, params: OperatorParams) -> TruncatedPSeries {
    let p = f.p();
    f.map_tail(|k, a| rafid_weight(k, p, params) * a)
}

/// Evaluates the defining integral at `z` by `nodes`-point Gauss-Laguerre
/// quadrature, checked against a rule with half as many nodes.
///
/// Substituting `t = (1-mu) s` turns the weight into `s^(delta-1) e^(-s)`, so the
/// rule integrates `f(z (1-mu) s)` against a Gamma(delta) density. Only valid for
/// `delta >= ORACLE_MIN_DELTA`.
pub fn rafid_integral_oracle(
    f: &TruncatedPSeries,
    params: OperatorParams,
    z: Complex64,
    nodes: usize,
) -> Result<Complex64> {
    if nodes < 64 {
        return Err(Error::Domain(format!(
            "the integral oracle needs at least 64 nodes (got {nodes})"
        )));
    }
    if params.delta < ORACLE_MIN_DELTA {
        return Err(Error::Domain(format!(
            "the integral oracle needs delta >= {ORACLE_MIN_DELTA} (got {})",
            params.delta
        )));
    }
    let scale = 1.0 - params.mu;
    let p = f.p();
    // Gamma(delta) / (Gamma(p+delta) (1-mu)^p): the density normalization folded
    // together with the operator's prefactor
    let prefactor = (ln_gamma(params.delta) - ln_gamma(p as f64 + params.delta)).exp() / scale.powi(p as i32);

    let integrate = |n: usize| -> Result<Complex64> {
        let rule = LaguerreRule::new(n, params.delta - 1.0)?;
        let sum: Complex64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .filter(|(_, w)| **w > 0.0)
            .map(|(&s, &w)| f.evaluate(z * (scale * s)) * w)
            .sum();
        Ok(sum * prefactor)
    };
    let fine = integrate(nodes)?;
    let coarse = integrate(nodes / 2)?;
    let error = (fine - coarse).norm();
    if error > 1e-10 * (1.0 + fine.norm()) {
        return Err(Error::QuadratureNotConverged { error, nodes });
    }
    Ok(fine)
}
