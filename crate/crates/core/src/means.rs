//! Integral means `int_0^{2 pi} |f(r e^{i theta})|^tau d theta` and the comparison
//! of a class member against the two-term comparator
//! `z^p - (p+1)(A-B)(p-alpha) / ([(1-B)+(A-B)(p-alpha)](1-mu)(p+delta)) z^{p+1}`.
//!
//! The integrand is smooth and periodic, so the trapezoid rule converges
//! geometrically; the node count is doubled until two successive values agree.

use serde::{Deserialize, Serialize};

use crate::criteria::{self, ClassParams, DEFAULT_MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::quadrature::{periodic_midpoints, periodic_trapezoid};
use crate::series::{Analytic, TruncatedPSeries};

pub const DEFAULT_TAUS: [f64; 4] = [0.5, 1.0, 2.0, 6.0];
pub const DEFAULT_RADII: [f64; 4] = [0.25, 0.5, 0.9, 0.99];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralMeansQuery {
    pub r: f64,
    pub tau: f64,
    /// Starting node count; must be even and at least 16.
    pub nodes: usize,
}

impl IntegralMeansQuery {
    pub fn new(r: f64, tau: f64, nodes: usize) -> Result<Self> {
        let mut problems = Vec::new();
        if !(r > 0.0 && r < 1.0) {
            problems.push(format!("r must lie in (0, 1) (got {r})"));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            problems.push(format!("tau must be positive (got {tau})"));
        }
        if nodes < 16 || !nodes.is_multiple_of(2) {
            problems.push(format!("nodes must be even and at least 16 (got {nodes})"));
        }
        if problems.is_empty() {
            Ok(Self { r, tau, nodes })
        } else {
            Err(Error::InvalidParams(problems))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeansTolerance {
    /// Relative agreement required between successive node doublings.
    pub refinement: f64,
    pub max_nodes: usize,
    /// Slack on `lhs <= rhs`, relative to `1 + rhs`.
    pub holds: f64,
}

impl Default for MeansTolerance {
    fn default() -> Self {
        Self {
            refinement: 1e-10,
            max_nodes: 1 << 20,
            holds: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanValue {
    pub value: f64,
    /// `|value(N) - value(N/2)|` for the final `N`.
    pub refinement_error: f64,
    pub nodes: usize,
}

/// The integral mean of `f` on the circle of radius `q.r`, refined by doubling.
pub fn mean_integral<F: Analytic + ?Sized>(f: &F, q: &IntegralMeansQuery, tol: &MeansTolerance) -> Result<MeanValue> {
    let integrand = |theta: f64| {
        let z = num_complex::Complex64::from_polar(q.r, theta);
        f.evaluate(z).norm().powf(q.tau)
    };
    let mut n = q.nodes / 2;
    let mut value = periodic_trapezoid(n, integrand);
    loop {
        let refined = 0.5 * (value + periodic_midpoints(n, integrand));
        let error = (refined - value).abs();
        n *= 2;
        value = refined;
        if error <= tol.refinement * (1.0 + value) {
            return Ok(MeanValue {
                value,
                refinement_error: error,
                nodes: n,
            });
        }
        if 2 * n > tol.max_nodes {
            return Err(Error::QuadratureNotConverged { error, nodes: n });
        }
    }
}

/// The two-term comparator whose integral means dominate every member of `R`.
pub fn comparator_fp1(params: &ClassParams) -> TruncatedPSeries {
    let p = params.p();
    let c = (p + 1) as f64 * params.lemma_rhs() / params.lead_weight();
    let boundary = criteria::extremal_r(params, p + 1).expect("p + 1 exceeds p");
    let expected = (p + 1) as f64 * boundary.coeff(p + 1);
    assert!(
        (c - expected).abs() <= 1e-12 * expected,
        "comparator coefficient {c} disagrees with the boundary member ({expected})"
    );
    TruncatedPSeries::new(p, [(p + 1, c)]).expect("comparator coefficient is positive")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeansReport {
    pub r: f64,
    pub tau: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// The larger of the two refinement errors.
    pub refinement_error: f64,
}

/// Compares the integral mean of a member `f` with that of [`comparator_fp1`].
pub fn verify_integral_means(
    f: &TruncatedPSeries,
    params: &ClassParams,
    q: &IntegralMeansQuery,
    tol: &MeansTolerance,
) -> Result<MeansReport> {
    let verdict = criteria::membership(f, params, criteria::ClassTag::R, DEFAULT_MEMBERSHIP_TOL)?;
    if !verdict.member {
        return Err(Error::NotAMember {
            lhs: verdict.lhs,
            rhs: verdict.rhs,
        });
    }
    let lhs = mean_integral(f, q, tol)?;
    let rhs = mean_integral(&comparator_fp1(params), q, tol)?;
    Ok(MeansReport {
        r: q.r,
        tau: q.tau,
        lhs: lhs.value,
        rhs: rhs.value,
        holds: lhs.value <= rhs.value + tol.holds * (1.0 + rhs.value),
        refinement_error: lhs.refinement_error.max(rhs.refinement_error),
    })
}

/// Every `(tau, r)` cell, taus outermost.
pub fn verify_matrix(
    f: &TruncatedPSeries,
    params: &ClassParams,
    taus: &[f64],
    radii: &[f64],
    nodes: usize,
    tol: &MeansTolerance,
) -> Result<Vec<MeansReport>> {
    let mut out = Vec::with_capacity(taus.len() * radii.len());
    for &tau in taus {
        for &r in radii {
            out.push(verify_integral_means(
                f,
                params,
                &IntegralMeansQuery::new(r, tau, nodes)?,
                tol,
            )?);
        }
    }
    Ok(out)
}

/// `sum_k D/S * a_k` with `D` the lead criterion weight and `S = (A-B)(p-alpha)`; at
/// most one exactly when the subordinating function satisfies `|w(z)| <= |z|`.
pub fn schwarz_witness_bound(f: &TruncatedPSeries, params: &ClassParams) -> f64 {
    let factor = params.lead_weight() / params.lemma_rhs();
    f.tail().map(|(_, a)| factor * a).sum()
}

/// Samples `(theta, |f(r e^{i theta})|)` on `nodes` equally spaced angles.
pub fn curve<F: Analytic + ?Sized>(f: &F, r: f64, nodes: usize) -> Vec<(f64, f64)> {
    (0..nodes)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / nodes as f64;
            (theta, f.evaluate(num_complex::Complex64::from_polar(r, theta)).norm())
        })
        .collect()
}
