//! Class parameters, coefficient-criterion membership and the definitional
//! subordination residuals.
//!
//! A function `f = z^p - sum a_k z^k` belongs to the starlike-type class `R` iff
//!
//! ```text
//! sum_k [(1-B)(k-p) + (A-B)(p-alpha)] (1-mu)^(k-p) Gamma(k+delta)/Gamma(p+delta) a_k <= (A-B)(p-alpha)
//! ```
//!
//! and to the convex-type class `P` iff the same sum with an extra factor `k` is at
//! most `p (A-B)(p-alpha)`. Grid residuals never certify non-membership; only the
//! coefficient sums above are certificates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{apply_rafid_series, rafid_weight, OperatorParams};
use crate::series::{
    scan_max, scan_min, Analytic, GridScan, GridSpec, RealPolynomial, TruncatedPSeries, DEFAULT_DENOMINATOR_TOL,
};

/// Absolute tolerance on a membership margin.
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-12;

/// `(p, alpha, mu, delta, A, B)` with `0 <= alpha < p`, `0 <= mu < 1`,
/// `0 <= delta <= 1` and `-1 <= B < A <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ClassParams {
    p: u32,
    alpha: f64,
    op: OperatorParams,
    a: f64,
    b: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    p: i64,
    alpha: f64,
    mu: f64,
    delta: f64,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
}

impl TryFrom<RawParams> for ClassParams {
    type Error = Error;

    // negated comparisons so that NaN fields are reported too
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn try_from(raw: RawParams) -> Result<Self> {
        let mut problems = Vec::new();
        if raw.p < 1 || raw.p > u32::MAX as i64 {
            problems.push(format!("p must be a positive integer (got {})", raw.p));
        }
        let p = raw.p.max(0) as f64;
        if !(raw.alpha >= 0.0 && raw.alpha < p) {
            problems.push(format!("alpha must lie in [0, p) (got {}, p = {})", raw.alpha, raw.p));
        }
        if !(0.0..1.0).contains(&raw.mu) {
            problems.push(format!("mu must lie in [0, 1) (got {})", raw.mu));
        }
        if !(0.0..=1.0).contains(&raw.delta) {
            problems.push(format!("delta must lie in [0, 1] (got {})", raw.delta));
        }
        if !(raw.b >= -1.0) {
            problems.push(format!("B must be at least -1 (got {})", raw.b));
        }
        if !(raw.a <= 1.0) {
            problems.push(format!("A must be at most 1 (got {})", raw.a));
        }
        if !(raw.b < raw.a) {
            problems.push(format!("B must be less than A (got A = {}, B = {})", raw.a, raw.b));
        }
        if !problems.is_empty() {
            return Err(Error::InvalidParams(problems));
        }
        let op = OperatorParams::new(raw.mu, raw.delta)?;
        let params = Self {
            p: raw.p as u32,
            alpha: raw.alpha,
            op,
            a: raw.a,
            b: raw.b,
        };
        debug_assert!(params.lemma_rhs() > 0.0);
        Ok(params)
    }
}

impl From<ClassParams> for RawParams {
    fn from(c: ClassParams) -> Self {
        RawParams {
            p: c.p as i64,
            alpha: c.alpha,
            mu: c.op.mu(),
            delta: c.op.delta(),
            a: c.a,
            b: c.b,
        }
    }
}

impl ClassParams {
    /// Validates the tuple, listing every violated range constraint.
    pub fn new(p: u32, alpha: f64, mu: f64, delta: f64, a: f64, b: f64) -> Result<Self> {
        RawParams {
            p: p as i64,
            alpha,
            mu,
            delta,
            a,
            b,
        }
        .try_into()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.op.mu()
    }

    pub fn delta(&self) -> f64 {
        self.op.delta()
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn operator(&self) -> OperatorParams {
        self.op
    }

    /// `(A-B)(p-alpha)`, the right-hand side of the `R` criterion.
    pub fn lemma_rhs(&self) -> f64 {
        (self.a - self.b) * (self.p as f64 - self.alpha)
    }

    /// The `R`-criterion weight of `a_k`:
    /// `[(1-B)(k-p) + (A-B)(p-alpha)] (1-mu)^(k-p) Gamma(k+delta)/Gamma(p+delta)`.
    pub fn lemma_weight(&self, k: u32) -> f64 {
        assert!(k > self.p, "criterion weights start at k = p + 1");
        let linear = (1.0 - self.b) * (k - self.p) as f64 + self.lemma_rhs();
        linear * rafid_weight(k, self.p, self.op)
    }

    /// `[(1-B) + (A-B)(p-alpha)] (1-mu)(p+delta)`, the weight at `k = p + 1`.
    pub fn lead_weight(&self) -> f64 {
        ((1.0 - self.b) + self.lemma_rhs()) * (1.0 - self.mu()) * (self.p as f64 + self.delta())
    }

    fn check_valence(&self, f: &TruncatedPSeries) -> Result<()> {
        if f.p() == self.p {
            Ok(())
        } else {
            Err(Error::ValenceMismatch {
                left: f.p(),
                right: self.p,
            })
        }
    }
}

/// Which of the two classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    R,
    P,
}

impl std::str::FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Self::R),
            "P" | "p" => Ok(Self::P),
            other => Err(Error::Domain(format!("unknown class tag {other:?} (expected R or P)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub lhs: f64,
    pub rhs: f64,
    pub member: bool,
    /// `rhs - lhs`
    pub margin: f64,
}

impl MembershipVerdict {
    pub fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        Self {
            lhs,
            rhs,
            member: lhs <= rhs + tol,
            margin: rhs - lhs,
        }
    }
}

/// Left-hand side of the `R` coefficient criterion.
pub fn lemma1_lhs(f: &TruncatedPSeries, params: &ClassParams) -> Result<f64> {
    params.check_valence(f)?;
    Ok(f.tail().map(|(k, a)| params.lemma_weight(k) * a).sum())
}

/// Left-hand side of the `P` coefficient criterion.
pub fn lemma2_lhs(f: &TruncatedPSeries, params: &ClassParams) -> Result<f64> {
    params.check_valence(f)?;
    Ok(f.tail().map(|(k, a)| k as f64 * params.lemma_weight(k) * a).sum())
}

pub fn lemma_rhs(params: &ClassParams, which: ClassTag) -> f64 {
    match which {
        ClassTag::R => params.lemma_rhs(),
        ClassTag::P => params.p as f64 * params.lemma_rhs(),
    }
}

pub fn lemma_lhs(f: &TruncatedPSeries, params: &ClassParams, which: ClassTag) -> Result<f64> {
    match which {
        ClassTag::R => lemma1_lhs(f, params),
        ClassTag::P => lemma2_lhs(f, params),
    }
}

pub fn membership(f: &TruncatedPSeries, params: &ClassParams, which: ClassTag, tol: f64) -> Result<MembershipVerdict> {
    Ok(MembershipVerdict::new(
        lemma_lhs(f, params, which)?,
        lemma_rhs(params, which),
        tol,
    ))
}

pub fn is_member_r(f: &TruncatedPSeries, params: &ClassParams) -> Result<MembershipVerdict> {
    membership(f, params, ClassTag::R, DEFAULT_MEMBERSHIP_TOL)
}

pub fn is_member_p(f: &TruncatedPSeries, params: &ClassParams) -> Result<MembershipVerdict> {
    membership(f, params, ClassTag::P, DEFAULT_MEMBERSHIP_TOL)
}

fn check_extremal_index(params: &ClassParams, k: u32) -> Result<()> {
    if k <= params.p {
        Err(Error::Domain(format!(
            "extremal index k = {k} must exceed p = {}",
            params.p
        )))
    } else {
        Ok(())
    }
}

/// The single-term boundary member `z^p - a_k z^k` of `R`.
pub fn extremal_r(params: &ClassParams, k: u32) -> Result<TruncatedPSeries> {
    check_extremal_index(params, k)?;
    TruncatedPSeries::new(params.p, [(k, params.lemma_rhs() / params.lemma_weight(k))])
}

/// The single-term boundary member `z^p - a_k z^k` of `P`.
pub fn extremal_p(params: &ClassParams, k: u32) -> Result<TruncatedPSeries> {
    check_extremal_index(params, k)?;
    let a = params.p as f64 * params.lemma_rhs() / (k as f64 * params.lemma_weight(k));
    TruncatedPSeries::new(params.p, [(k, a)])
}

/// A seeded random member with tail indices `p+1..=degree`, scaled so its criterion
/// sum is exactly `load` times the right-hand side.
pub fn random_member(
    params: &ClassParams,
    degree: u32,
    seed: u64,
    which: ClassTag,
    load: f64,
) -> Result<TruncatedPSeries> {
    let mut problems = Vec::new();
    if degree <= params.p {
        problems.push(format!("degree {degree} must exceed p = {}", params.p));
    }
    if !(load > 0.0 && load <= 1.0) {
        problems.push(format!("load must lie in (0, 1] (got {load})"));
    }
    if !problems.is_empty() {
        return Err(Error::InvalidParams(problems));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws: Vec<(u32, f64)> = (params.p + 1..=degree).map(|k| (k, rng.random::<f64>())).collect();
    if draws.iter().all(|&(_, u)| u == 0.0) {
        draws[0].1 = 1.0;
    }
    let raw = TruncatedPSeries::new(params.p, draws)?;
    let lhs = lemma_lhs(&raw, params, which)?;
    Ok(raw.scale_tail(load * lemma_rhs(params, which) / lhs))
}

/// `z f'(z) / p`, which maps `P` onto `R`.
pub fn p_transform(f: &TruncatedPSeries) -> TruncatedPSeries {
    let p = f.p() as f64;
    f.map_tail(|k, a| k as f64 * a / p)
}

/// `z g'(z) / g(z)` at `z`.
fn log_derivative(g: &TruncatedPSeries, dg: &RealPolynomial, z: Complex64) -> Result<Complex64> {
    let value = g.evaluate(z);
    if value.norm() <= DEFAULT_DENOMINATOR_TOL {
        return Err(Error::NearZeroDenominator {
            z,
            magnitude: value.norm(),
        });
    }
    Ok(z * dg.evaluate(z) / value)
}

/// `1 + z g''(z) / g'(z)` at `z`.
fn convex_quantity(dg: &RealPolynomial, ddg: &RealPolynomial, z: Complex64) -> Result<Complex64> {
    let slope = dg.evaluate(z);
    if slope.norm() <= DEFAULT_DENOMINATOR_TOL {
        return Err(Error::NearZeroDenominator {
            z,
            magnitude: slope.norm(),
        });
    }
    Ok(1.0 + z * ddg.evaluate(z) / slope)
}

/// `|(q - p) / (B q - [Bp + (A-B)(p-alpha)])|`, below one inside the class disk.
fn residual(q: Complex64, params: &ClassParams, z: Complex64) -> Result<f64> {
    let p = params.p as f64;
    let den = params.b * q - (params.b * p + params.lemma_rhs());
    if den.norm() <= DEFAULT_DENOMINATOR_TOL {
        return Err(Error::NearZeroDenominator {
            z,
            magnitude: den.norm(),
        });
    }
    Ok(((q - p) / den).norm())
}

/// Largest subordination residual of `z (Rf)'/(Rf)` over the grid; below one on
/// every sample means the defining inequality holds there.
pub fn subordination_residual_r(f: &TruncatedPSeries, params: &ClassParams, grid: &GridSpec) -> Result<GridScan> {
    params.check_valence(f)?;
    let image = apply_rafid_series(f, params.operator());
    let slope = image.derivative();
    scan_max(&grid.points(), |z| {
        residual(log_derivative(&image, &slope, z)?, params, z)
    })
}

/// As [`subordination_residual_r`] with `1 + z (Rf)''/(Rf)'` in place of the
/// logarithmic derivative.
pub fn subordination_residual_p(f: &TruncatedPSeries, params: &ClassParams, grid: &GridSpec) -> Result<GridScan> {
    params.check_valence(f)?;
    let image = apply_rafid_series(f, params.operator());
    let slope = image.derivative();
    let curvature = slope.derivative();
    scan_max(&grid.points(), |z| {
        residual(convex_quantity(&slope, &curvature, z)?, params, z)
    })
}

pub fn subordination_residual(
    f: &TruncatedPSeries,
    params: &ClassParams,
    which: ClassTag,
    grid: &GridSpec,
) -> Result<GridScan> {
    match which {
        ClassTag::R => subordination_residual_r(f, params, grid),
        ClassTag::P => subordination_residual_p(f, params, grid),
    }
}

/// Smallest `Re(z f'/f)` over the grid: a numeric estimate of the starlikeness order.
pub fn starlike_order_estimate(f: &TruncatedPSeries, grid: &GridSpec) -> Result<GridScan> {
    let slope = f.derivative();
    scan_min(&grid.points(), |z| Ok(log_derivative(f, &slope, z)?.re))
}

/// Smallest `Re(1 + z f''/f')` over the grid.
pub fn convex_order_estimate(f: &TruncatedPSeries, grid: &GridSpec) -> Result<GridScan> {
    let slope = f.derivative();
    let curvature = slope.derivative();
    scan_min(&grid.points(), |z| Ok(convex_quantity(&slope, &curvature, z)?.re))
}
