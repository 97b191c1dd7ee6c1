//! Truncated p-valent series and real-coefficient polynomials.
//!
//! A [`TruncatedPSeries`] is `z^p - sum_{k=p+1}^{K} a_k z^k` with every `a_k >= 0`.
//! Anything that is not of that shape (derivatives, operator images, numerators of
//! ratios) is carried as a [`RealPolynomial`]. Both evaluate exactly at complex
//! points through [`Analytic`].

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominator magnitude below which a ratio sample is discarded.
pub const DEFAULT_DENOMINATOR_TOL: f64 = 1e-12;

/// A polynomial that can be evaluated and differentiated.
pub trait Analytic {
    /// Exact polynomial evaluation at `z`.
    fn evaluate(&self, z: Complex64) -> Complex64;

    fn derivative(&self) -> RealPolynomial;

    fn to_polynomial(&self) -> RealPolynomial;
}

/// Horner's rule over sparse terms given in descending degree order.
fn horner<I>(terms: I, z: Complex64) -> Complex64
where
    I: IntoIterator<Item = (u32, f64)>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev: Option<u32> = None;
    for (d, c) in terms {
        acc = match prev {
            Some(pd) => acc * z.powu(pd - d) + c,
            None => Complex64::new(c, 0.0),
        };
        prev = Some(d);
    }
    match prev {
        Some(d) => acc * z.powu(d),
        None => acc,
    }
}

/// A polynomial with real coefficients of any sign, stored sparsely by degree.
///
/// Exact zeros are never stored, so two polynomials compare equal iff they have the
/// same nonzero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: BTreeMap<u32, f64>,
}

impl RealPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, f64)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (d, c) in terms {
            *coeffs.entry(d).or_insert(0.0) += c;
        }
        coeffs.retain(|_, c| *c != 0.0);
        Self { coeffs }
    }

    pub fn monomial(degree: u32, coeff: f64) -> Self {
        Self::from_terms([(degree, coeff)])
    }

    pub fn coeff(&self, degree: u32) -> f64 {
        self.coeffs.get(&degree).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in ascending degree order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, f64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (d, c * s)))
    }

    /// Multiplies by `z^n`.
    pub fn shift(&self, n: u32) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (d + n, c)))
    }
}

impl Analytic for RealPolynomial {
    fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(self.terms().rev(), z)
    }

    fn derivative(&self) -> RealPolynomial {
        Self::from_terms(self.terms().filter(|&(d, _)| d > 0).map(|(d, c)| (d - 1, c * d as f64)))
    }

    fn to_polynomial(&self) -> RealPolynomial {
        self.clone()
    }
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;

    fn add(self, rhs: &RealPolynomial) -> RealPolynomial {
        RealPolynomial::from_terms(self.terms().chain(rhs.terms()))
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;

    fn sub(self, rhs: &RealPolynomial) -> RealPolynomial {
        RealPolynomial::from_terms(self.terms().chain(rhs.terms().map(|(d, c)| (d, -c))))
    }
}

impl Neg for &RealPolynomial {
    type Output = RealPolynomial;

    fn neg(self) -> RealPolynomial {
        self.scale(-1.0)
    }
}

/// `f(z) = z^p - sum a_k z^k` with finitely many nonnegative `a_k`, `k >= p + 1`.
///
/// The JSON form is `{"p": 1, "tail": [{"k": 2, "a": 0.1}]}` with tail indices
/// strictly ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesSpec", into = "SeriesSpec")]
pub struct TruncatedPSeries {
    p: u32,
    tail: BTreeMap<u32, f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TailTerm {
    k: i64,
    a: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesSpec {
    p: i64,
    #[serde(default)]
    tail: Vec<TailTerm>,
}

impl TryFrom<SeriesSpec> for TruncatedPSeries {
    type Error = Error;

    fn try_from(spec: SeriesSpec) -> Result<Self> {
        let mut problems = Vec::new();
        if spec.p < 1 || spec.p > u32::MAX as i64 {
            problems.push(format!("p must be a positive integer (got {})", spec.p));
        }
        let mut prev: Option<i64> = None;
        let mut seen = std::collections::BTreeSet::new();
        for t in &spec.tail {
            if !seen.insert(t.k) {
                problems.push(format!("duplicate tail index k = {}", t.k));
            } else if prev.is_some_and(|pk| t.k < pk) {
                problems.push(format!(
                    "tail indices must be sorted ascending (k = {} after {})",
                    t.k,
                    prev.unwrap()
                ));
            }
            prev = Some(t.k);
        }
        let p = spec.p.clamp(1, u32::MAX as i64) as u32;
        let terms: Vec<(i64, f64)> = spec.tail.iter().map(|t| (t.k, t.a)).collect();
        problems.extend(term_problems(p, spec.p >= 1, &terms));
        if !problems.is_empty() {
            return Err(Error::InvalidSeries(problems));
        }
        Ok(Self {
            p,
            tail: terms.into_iter().map(|(k, a)| (k as u32, a)).collect(),
        })
    }
}

fn term_problems(p: u32, p_valid: bool, terms: &[(i64, f64)]) -> Vec<String> {
    let mut problems = Vec::new();
    for &(k, a) in terms {
        if p_valid && k <= p as i64 {
            problems.push(format!("tail index must exceed p (k = {k}, p = {p})"));
        } else if k > u32::MAX as i64 {
            problems.push(format!("tail index too large (k = {k})"));
        }
        if !a.is_finite() {
            problems.push(format!("a_k must be finite (k = {k})"));
        } else if a < 0.0 {
            problems.push(format!("a_k must be nonnegative (k = {k}, a = {a})"));
        }
    }
    problems
}

impl From<TruncatedPSeries> for SeriesSpec {
    fn from(f: TruncatedPSeries) -> Self {
        SeriesSpec {
            p: f.p as i64,
            tail: f.tail.iter().map(|(&k, &a)| TailTerm { k: k as i64, a }).collect(),
        }
    }
}

impl TruncatedPSeries {
    /// Validates and builds a series; every violated constraint is reported.
    pub fn new<I: IntoIterator<Item = (u32, f64)>>(p: u32, tail: I) -> Result<Self> {
        let mut problems = Vec::new();
        if p == 0 {
            problems.push("p must be a positive integer (got 0)".to_string());
        }
        let mut map = BTreeMap::new();
        let mut terms = Vec::new();
        for (k, a) in tail {
            if map.insert(k, a).is_some() {
                problems.push(format!("duplicate tail index k = {k}"));
            }
            terms.push((k as i64, a));
        }
        problems.extend(term_problems(p, p > 0, &terms));
        if problems.is_empty() {
            Ok(Self { p, tail: map })
        } else {
            Err(Error::InvalidSeries(problems))
        }
    }

    /// The pure monomial `z^p`.
    pub fn monomial(p: u32) -> Self {
        assert!(p >= 1, "valence must be positive");
        Self {
            p,
            tail: BTreeMap::new(),
        }
    }

    /// Rebuilds the tail term-wise; `g` must map nonnegative coefficients to
    /// nonnegative coefficients.
    pub(crate) fn map_tail(&self, mut g: impl FnMut(u32, f64) -> f64) -> Self {
        let tail = self
            .tail
            .iter()
            .map(|(&k, &a)| {
                let b = g(k, a);
                debug_assert!(b >= 0.0 && b.is_finite(), "tail map produced {b} at k = {k}");
                (k, b)
            })
            .collect();
        Self { p: self.p, tail }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Truncation degree `K`: the largest tail index, or `p` for an empty tail.
    pub fn degree(&self) -> u32 {
        self.tail.keys().next_back().copied().unwrap_or(self.p)
    }

    pub fn coeff(&self, k: u32) -> f64 {
        self.tail.get(&k).copied().unwrap_or(0.0)
    }

    /// Tail terms `(k, a_k)` in ascending order of `k`.
    pub fn tail(&self) -> impl DoubleEndedIterator<Item = (u32, f64)> + '_ {
        self.tail.iter().map(|(&k, &a)| (k, a))
    }

    pub fn tail_is_empty(&self) -> bool {
        self.tail.is_empty()
    }

    /// Multiplies every tail coefficient by `s >= 0`.
    pub fn scale_tail(&self, s: f64) -> Self {
        assert!(s >= 0.0 && s.is_finite(), "tail scale must be a nonnegative number");
        self.map_tail(|_, a| a * s)
    }

    /// The partial sum `f_m = z^p - sum_{k=p+1}^{m} a_k z^k`.
    pub fn partial_sum(&self, m: u32) -> Result<Self> {
        if m < self.p {
            return Err(Error::Domain(format!(
                "partial sum index m = {m} is below the valence p = {}",
                self.p
            )));
        }
        Ok(Self {
            p: self.p,
            tail: self.tail.range(..=m).map(|(&k, &a)| (k, a)).collect(),
        })
    }

    /// Signed terms including the leading `z^p`, descending.
    fn signed_terms_desc(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.tail
            .iter()
            .rev()
            .map(|(&k, &a)| (k, -a))
            .chain(std::iter::once((self.p, 1.0)))
    }
}

impl Analytic for TruncatedPSeries {
    fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(self.signed_terms_desc(), z)
    }

    fn derivative(&self) -> RealPolynomial {
        self.to_polynomial().derivative()
    }

    fn to_polynomial(&self) -> RealPolynomial {
        RealPolynomial::from_terms(self.signed_terms_desc())
    }
}

/// `numer(z) / denom(z)`, refusing when `|denom(z)| <= eps`.
pub fn ratio_eval<N, D>(numer: &N, denom: &D, z: Complex64, eps: f64) -> Result<Complex64>
where
    N: Analytic + ?Sized,
    D: Analytic + ?Sized,
{
    let d = denom.evaluate(z);
    if d.norm() <= eps {
        return Err(Error::NearZeroDenominator { z, magnitude: d.norm() });
    }
    Ok(numer.evaluate(z) / d)
}

/// Sampling configuration for points `z = r e^{i theta}` in the open unit disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub angular_nodes: usize,
    #[serde(default)]
    pub seed: u64,
    /// Extra points drawn uniformly from the disk of the largest radius.
    #[serde(default)]
    pub random_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            radii: vec![0.5, 0.9, 0.99],
            angular_nodes: 720,
            seed: 0,
            random_points: 0,
        }
    }
}

impl GridSpec {
    pub fn new(radii: Vec<f64>, angular_nodes: usize) -> Result<Self> {
        let grid = Self {
            radii,
            angular_nodes,
            seed: 0,
            random_points: 0,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.radii.is_empty() {
            problems.push("at least one radius is required".to_string());
        }
        for &r in &self.radii {
            if !(r > 0.0 && r < 1.0) {
                problems.push(format!("radius must lie in (0, 1) (got {r})"));
            }
        }
        if self.angular_nodes < 8 {
            problems.push(format!("angular_nodes must be at least 8 (got {})", self.angular_nodes));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(problems))
        }
    }

    /// All sample points in a fixed order: each radius swept counter-clockwise from
    /// `theta = 0`, followed by the seeded random points.
    pub fn points(&self) -> Vec<Complex64> {
        let n = self.angular_nodes;
        let mut pts: Vec<Complex64> = self
            .radii
            .iter()
            .flat_map(|&r| (0..n).map(move |j| Complex64::from_polar(r, TAU * j as f64 / n as f64)))
            .collect();
        if self.random_points > 0 {
            let rmax = self.radii.iter().copied().fold(0.0, f64::max);
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            for _ in 0..self.random_points {
                // sqrt for area-uniform radius; keep away from the origin
                let r = rmax * rng.random::<f64>().sqrt().max(1e-3);
                let theta = TAU * rng.random::<f64>();
                pts.push(Complex64::from_polar(r, theta));
            }
        }
        pts
    }
}

/// Extremum of a real functional over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridScan {
    pub value: f64,
    /// Sample point attaining `value`.
    pub witness: Complex64,
    pub retained: usize,
    /// Points dropped because a denominator vanished there.
    pub discarded: usize,
}

fn scan<F>(points: &[Complex64], mut g: F, better: fn(f64, f64) -> bool) -> Result<GridScan>
where
    F: FnMut(Complex64) -> Result<f64>,
{
    let mut best: Option<(f64, Complex64)> = None;
    let mut retained = 0;
    let mut discarded = 0;
    for &z in points {
        match g(z) {
            Ok(v) => {
                retained += 1;
                if best.is_none_or(|(b, _)| better(v, b)) {
                    best = Some((v, z));
                }
            }
            Err(Error::NearZeroDenominator { .. }) => discarded += 1,
            Err(e) => return Err(e),
        }
    }
    let (value, witness) = best.ok_or_else(|| Error::Domain("every grid point was discarded".into()))?;
    Ok(GridScan {
        value,
        witness,
        retained,
        discarded,
    })
}

/// Largest value of `g` over `points`; near-zero denominators are skipped.
pub fn scan_max<F>(points: &[Complex64], g: F) -> Result<GridScan>
where
    F: FnMut(Complex64) -> Result<f64>,
{
    scan(points, g, |v, b| v > b)
}

/// Smallest value of `g` over `points`; near-zero denominators are skipped.
pub fn scan_min<F>(points: &[Complex64], g: F) -> Result<GridScan>
where
    F: FnMut(Complex64) -> Result<f64>,
{
    scan(points, g, |v, b| v < b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_examples() {
        let id = TruncatedPSeries::monomial(1);
        assert_eq!(id.evaluate(c(0.5, 0.0)), c(0.5, 0.0));

        let f = TruncatedPSeries::new(1, [(2, 0.5)]).unwrap();
        assert_abs_diff_eq!(f.evaluate(c(1.0, 0.0)).re, 0.5, epsilon = 1e-15);

        let g = TruncatedPSeries::new(2, [(3, 0.25)]).unwrap();
        let v = g.evaluate(c(0.5, 0.0));
        assert_abs_diff_eq!(v.re, 0.21875, epsilon = 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(
            TruncatedPSeries::monomial(2).derivative(),
            RealPolynomial::monomial(1, 2.0)
        );
        let f = TruncatedPSeries::new(1, [(2, 0.5)]).unwrap();
        assert_eq!(f.derivative(), RealPolynomial::from_terms([(0, 1.0), (1, -1.0)]));
        assert!(RealPolynomial::monomial(0, 1.0).derivative().is_zero());
    }

    #[test]
    fn partial_sum_examples() {
        let f = TruncatedPSeries::new(1, [(2, 0.3), (3, 0.1)]).unwrap();
        assert_eq!(f.partial_sum(2).unwrap(), TruncatedPSeries::new(1, [(2, 0.3)]).unwrap());
        let g = TruncatedPSeries::new(1, [(2, 0.3)]).unwrap();
        assert_eq!(g.partial_sum(1).unwrap(), TruncatedPSeries::monomial(1));
        let h = TruncatedPSeries::monomial(3);
        assert_eq!(h.partial_sum(7).unwrap(), h);
        assert!(matches!(
            TruncatedPSeries::monomial(2).partial_sum(1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ratio_examples() {
        let z = RealPolynomial::monomial(1, 1.0);
        let r = ratio_eval(&z, &z, c(0.0, 0.3), DEFAULT_DENOMINATOR_TOL).unwrap();
        assert_abs_diff_eq!(r.re, 1.0, epsilon = 1e-15);
        let f = TruncatedPSeries::new(1, [(2, 0.5)]).unwrap();
        let r = ratio_eval(&f, &z, c(0.8, 0.0), DEFAULT_DENOMINATOR_TOL).unwrap();
        assert_abs_diff_eq!(r.re, 0.6, epsilon = 1e-15);
        assert!(matches!(
            ratio_eval(&f, &z, c(0.0, 0.0), DEFAULT_DENOMINATOR_TOL),
            Err(Error::NearZeroDenominator { .. })
        ));
    }

    #[test]
    fn validation_lists_every_problem() {
        let err = TruncatedPSeries::new(2, [(2, 0.1), (3, -1.0), (3, 0.2)]).unwrap_err();
        let Error::InvalidSeries(problems) = err else { panic!() };
        assert_eq!(problems.len(), 3, "{problems:?}");
        assert!(problems.iter().any(|s| s.contains("duplicate tail index k = 3")));
        assert!(problems.iter().any(|s| s.contains("tail index must exceed p")));
        assert!(problems.iter().any(|s| s.contains("a_k must be nonnegative")));
    }

    #[test]
    fn json_form() {
        let f: TruncatedPSeries = serde_json::from_str(r#"{"p":1,"tail":[{"k":2,"a":0.1}]}"#).unwrap();
        assert_eq!(f, TruncatedPSeries::new(1, [(2, 0.1)]).unwrap());
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"p":1,"tail":[{"k":2,"a":0.1}]}"#
        );

        let err = serde_json::from_str::<TruncatedPSeries>(r#"{"p":1,"tail":[{"k":2,"a":0.1},{"k":2,"a":0.2}]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("duplicate tail index k = 2"), "{err}");
        let err = serde_json::from_str::<TruncatedPSeries>(r#"{"p":0,"tail":[{"k":1,"a":-0.1}]}"#)
            .unwrap_err()
            .to_string();
        assert!(
            err.contains("p must be a positive integer") && err.contains("nonnegative"),
            "{err}"
        );
    }

    #[test]
    fn grid_points_exclude_origin() {
        let g = GridSpec {
            random_points: 50,
            seed: 3,
            ..GridSpec::default()
        };
        let pts = g.points();
        assert_eq!(pts.len(), 3 * 720 + 50);
        assert!(pts.iter().all(|z| z.norm() > 0.0 && z.norm() < 1.0));
        assert_eq!(pts, g.points());
        assert!(GridSpec::new(vec![1.0], 4).is_err());
    }

    fn poly_strategy() -> impl Strategy<Value = RealPolynomial> {
        prop::collection::vec((0u32..12, -2.0f64..2.0), 0..8).prop_map(RealPolynomial::from_terms)
    }

    fn point() -> impl Strategy<Value = Complex64> {
        (0.0f64..0.95, 0.0f64..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn derivative_matches_central_difference(f in poly_strategy(), z in point()) {
            let h = 1e-6;
            let fd = (f.evaluate(z + h) - f.evaluate(z - h)) / (2.0 * h);
            let exact = f.derivative().evaluate(z);
            prop_assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()));
        }

        #[test]
        fn evaluation_is_linear(f in poly_strategy(), g in poly_strategy(), z in point()) {
            let lhs = (&f + &g).evaluate(z);
            let rhs = f.evaluate(z) + g.evaluate(z);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn partial_sum_is_idempotent(coeffs in prop::collection::vec(0.0f64..1.0, 1..8), m in 2u32..10) {
            let f = TruncatedPSeries::new(2, coeffs.iter().enumerate().map(|(i, &a)| (i as u32 + 3, a))).unwrap();
            prop_assert_eq!(f.partial_sum(f.degree()).unwrap(), f.clone());
            let fm = f.partial_sum(m).unwrap();
            prop_assert_eq!(fm.partial_sum(m).unwrap(), fm);
        }
    }
}
