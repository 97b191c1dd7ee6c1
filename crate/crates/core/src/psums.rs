//! Partial sums `f_m` of class members and the lower bounds on
//! `Re(f/f_m)`, `Re(f_m/f)`, `Re(f'/f_m')` and `Re(f_m'/f')`.
//!
//! Everything is expressed through the normalized criterion weights
//! `c_k = W_k / ((A-B)(p-alpha))`, so that membership reads `sum_k c_k a_k <= 1`.
//! The bounds for `f/f_m` and `f_m/f` need `1 < c_{p+1} < c_{p+2} < ...`; the
//! derivative bounds additionally need `c_k >= k/p` below the cut and
//! `c_k >= k c_{m+1} / (p (m+1))` above it. When either audit fails the
//! corresponding records are kept but not asserted.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::criteria::{self, ClassParams, ClassTag};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, VerificationReport, HYPOTHESES_UNVERIFIED};
use crate::series::{
    ratio_eval, scan_min, Analytic, GridSpec, RealPolynomial, TruncatedPSeries, DEFAULT_DENOMINATOR_TOL,
};

pub const DEFAULT_BOUND_TOL: f64 = 1e-9;

/// `c_k`, the criterion weight of `a_k` divided by the criterion's right-hand side.
pub fn c_coefficient(k: u32, params: &ClassParams) -> Result<f64> {
    if k <= params.p() {
        return Err(Error::Domain(format!("c_k needs k > p (k = {k}, p = {})", params.p())));
    }
    Ok(params.lemma_weight(k) / params.lemma_rhs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityAudit {
    pub ok: bool,
    pub first_violation: Option<u32>,
}

/// Audits `c_{p+1} > 1` and `c_{k+1} > c_k` for `k` up to `max_k`.
pub fn monotonicity_check(params: &ClassParams, max_k: u32) -> Result<MonotonicityAudit> {
    let p = params.p();
    if max_k < p + 2 {
        return Err(Error::Domain(format!(
            "the audit needs K >= p + 2 (K = {max_k}, p = {p})"
        )));
    }
    let mut prev = c_coefficient(p + 1, params)?;
    let mut first_violation = (prev <= 1.0).then_some(p + 1);
    if first_violation.is_none() {
        for k in p + 2..=max_k {
            let c = c_coefficient(k, params)?;
            if c <= prev {
                first_violation = Some(k);
                break;
            }
            prev = c;
        }
    }
    Ok(MonotonicityAudit {
        ok: first_violation.is_none(),
        first_violation,
    })
}

/// First index in `p+1..=degree` breaking the extra hypothesis of the derivative
/// bounds at cut `m`.
pub fn derivative_hypothesis_violation(params: &ClassParams, m: u32, degree: u32) -> Result<Option<u32>> {
    let p = params.p() as f64;
    let c_next = c_coefficient(m + 1, params)?;
    for k in params.p() + 1..=degree {
        let c = c_coefficient(k, params)?;
        let kf = k as f64;
        let needed = if k <= m {
            kf / p
        } else {
            kf * c_next / (p * (m + 1) as f64)
        };
        // relative slack for the k = m + 1 equality case
        if c < needed * (1.0 - 1e-12) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSumBounds {
    pub m: u32,
    pub c_next: f64,
    /// Lower bound on `Re(f/f_m)`: `1 - 1/c_{m+1}`.
    pub b_ratio: f64,
    /// Lower bound on `Re(f_m/f)`: `c_{m+1}/(1 + c_{m+1})`.
    pub b_inv: f64,
    /// Lower bound on `Re(f'/f_m')`: `1 - (m+1)/c_{m+1}`.
    pub b_dratio: f64,
    /// Lower bound on `Re(f_m'/f')`: `c_{m+1}/(m + 1 + c_{m+1})`.
    pub b_dinv: f64,
    pub monotone_ok: bool,
}

pub fn bounds(m: u32, params: &ClassParams) -> Result<PartialSumBounds> {
    if m < params.p() {
        return Err(Error::Domain(format!("cut m = {m} is below p = {}", params.p())));
    }
    let c = c_coefficient(m + 1, params)?;
    let m1 = (m + 1) as f64;
    Ok(PartialSumBounds {
        m,
        c_next: c,
        b_ratio: 1.0 - 1.0 / c,
        b_inv: c / (1.0 + c),
        b_dratio: 1.0 - m1 / c,
        b_dinv: c / (m1 + c),
        monotone_ok: monotonicity_check(params, m + 2)?.ok,
    })
}

/// The boundary member `z^p - z^{m+1} / c_{m+1}`.
pub fn extremal_partial_sum(m: u32, params: &ClassParams) -> Result<TruncatedPSeries> {
    let b = bounds(m, params)?;
    TruncatedPSeries::new(params.p(), [(m + 1, 1.0 / b.c_next)])
}

/// `f(z) / z^p = 1 - sum a_k z^{k-p}`.
fn reduced(f: &TruncatedPSeries) -> RealPolynomial {
    RealPolynomial::from_terms(std::iter::once((0, 1.0)).chain(f.tail().map(|(k, a)| (k - f.p(), -a))))
}

/// `Re(f/f_m)` for the extremal function along the positive real axis.
pub fn sharpness_probe(m: u32, params: &ClassParams, radii: &[f64]) -> Result<Vec<(f64, f64)>> {
    if radii.iter().any(|r| !(0.0..1.0).contains(r)) || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(vec![format!(
            "radii must ascend within [0, 1) (got {radii:?})"
        )]));
    }
    let f = extremal_partial_sum(m, params)?;
    let num = reduced(&f);
    let den = reduced(&f.partial_sum(m)?);
    radii
        .iter()
        .map(|&r| {
            Ok((
                r,
                ratio_eval(&num, &den, Complex64::new(r, 0.0), DEFAULT_DENOMINATOR_TOL)?.re,
            ))
        })
        .collect()
}

/// Scans the four ratios of a member over the grid against their bounds.
pub fn verify_partial_sum_bounds(
    f: &TruncatedPSeries,
    m: u32,
    params: &ClassParams,
    grid: &GridSpec,
    tol: f64,
) -> Result<VerificationReport> {
    let verdict = criteria::membership(f, params, ClassTag::R, criteria::DEFAULT_MEMBERSHIP_TOL)?;
    if !verdict.member {
        return Err(Error::NotAMember {
            lhs: verdict.lhs,
            rhs: verdict.rhs,
        });
    }
    let b = bounds(m, params)?;
    let audit_to = (m + 2).max(f.degree());
    let monotone = monotonicity_check(params, audit_to)?;
    let derivative_violation = derivative_hypothesis_violation(params, m, audit_to)?;

    let mut report = VerificationReport::new(format!("psums verify m={m}")).with_params(params);
    if let Some(k) = monotone.first_violation {
        report.tag(HYPOTHESES_UNVERIFIED);
        report.tag(format!("c_k monotonicity fails at k = {k}"));
    }
    if let Some(k) = derivative_violation {
        report.tag(HYPOTHESES_UNVERIFIED);
        report.tag(format!("derivative-bound hypothesis fails at k = {k}"));
    }

    let fm = f.partial_sum(m)?;
    let df = f.derivative();
    let dfm = fm.derivative();
    let points = grid.points();
    let re_ratio = |num: &dyn Analytic, den: &dyn Analytic| {
        scan_min(&points, |z| Ok(ratio_eval(num, den, z, DEFAULT_DENOMINATOR_TOL)?.re))
    };
    let scans = [
        ("Re(f/f_m)", re_ratio(f, &fm)?, b.b_ratio, monotone.ok),
        ("Re(f_m/f)", re_ratio(&fm, f)?, b.b_inv, monotone.ok),
        (
            "Re(f'/f_m')",
            re_ratio(&df, &dfm)?,
            b.b_dratio,
            monotone.ok && derivative_violation.is_none(),
        ),
        (
            "Re(f_m'/f')",
            re_ratio(&dfm, &df)?,
            b.b_dinv,
            monotone.ok && derivative_violation.is_none(),
        ),
    ];
    for (name, scan, bound, asserted) in scans {
        report.discarded += scan.discarded;
        let record = CheckRecord::at_least(name, scan.value, bound, tol).with_witness(scan.witness);
        report.push(if asserted { record } else { record.informational() });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(mu: f64, delta: f64) -> ClassParams {
        ClassParams::new(1, 0.0, mu, delta, 1.0, -1.0).unwrap()
    }

    #[test]
    fn c_examples() {
        let p = params(0.0, 0.0);
        assert_relative_eq!(c_coefficient(2, &p).unwrap(), 2.0, max_relative = 1e-15);
        assert_relative_eq!(c_coefficient(3, &p).unwrap(), 6.0, max_relative = 1e-15);
        assert_relative_eq!(c_coefficient(6, &p).unwrap(), 720.0, max_relative = 1e-14);
        assert_relative_eq!(c_coefficient(2, &params(0.0, 1.0)).unwrap(), 4.0, max_relative = 1e-15);
        assert!(c_coefficient(1, &p).is_err());
        let q = ClassParams::new(2, 0.5, 0.3, 0.2, 0.7, -0.4).unwrap();
        let a = criteria::extremal_r(&q, 3).unwrap().coeff(3);
        assert_relative_eq!(c_coefficient(3, &q).unwrap(), 1.0 / a, max_relative = 1e-14);
    }

    #[test]
    fn monotonicity_examples() {
        assert_eq!(
            monotonicity_check(&params(0.0, 0.0), 10).unwrap(),
            MonotonicityAudit {
                ok: true,
                first_violation: None
            }
        );
        assert_relative_eq!(c_coefficient(2, &params(0.9, 0.0)).unwrap(), 0.2, max_relative = 1e-14);
        assert_eq!(
            monotonicity_check(&params(0.9, 0.0), 10).unwrap().first_violation,
            Some(2)
        );
        for p in 1..4 {
            for &alpha in &[0.0, 0.5] {
                for &b in &[-1.0, -0.5, 0.0, 0.5] {
                    let q = ClassParams::new(p, alpha, 0.0, 1.0, 1.0, b).unwrap();
                    assert!(monotonicity_check(&q, 20).unwrap().ok, "{q:?}");
                }
            }
        }
        assert!(monotonicity_check(&params(0.0, 0.0), 2).is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = bounds(1, &params(0.0, 0.0)).unwrap();
        assert_eq!((b.b_ratio, b.b_dratio, b.b_dinv), (0.5, 0.0, 0.5));
        assert_relative_eq!(b.b_inv, 2.0 / 3.0);
        assert!(b.monotone_ok);
        let b = bounds(2, &params(0.0, 0.0)).unwrap();
        assert_relative_eq!(b.b_ratio, 5.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(b.b_inv, 6.0 / 7.0, max_relative = 1e-15);
        assert_relative_eq!(b.b_dratio, 0.5, max_relative = 1e-15);
        assert_relative_eq!(b.b_dinv, 6.0 / 9.0, max_relative = 1e-15);
        let b = bounds(30, &params(0.0, 0.0)).unwrap();
        for v in [b.b_ratio, b.b_inv, b.b_dratio, b.b_dinv] {
            assert!((1.0 - v).abs() < 1e-20_f64.max(1e-15));
        }
        assert!(bounds(0, &params(0.0, 0.0)).is_err());
    }

    #[test]
    fn bound_ordering() {
        for m in 1..6 {
            for &(mu, delta) in &[(0.0, 0.0), (0.2, 0.5), (0.4, 1.0)] {
                let b = bounds(m, &params(mu, delta)).unwrap();
                if b.c_next > (m + 1) as f64 {
                    assert!(b.b_dratio <= b.b_ratio && b.b_dinv <= b.b_inv);
                }
            }
        }
    }

    #[test]
    fn extremal_examples() {
        let f = extremal_partial_sum(1, &params(0.0, 0.0)).unwrap();
        assert_eq!(f, TruncatedPSeries::new(1, [(2, 0.5)]).unwrap());
        let q = ClassParams::new(3, 1.0, 0.2, 0.6, 0.9, -0.2).unwrap();
        for m in 3..7 {
            let v = criteria::is_member_r(&extremal_partial_sum(m, &q).unwrap(), &q).unwrap();
            assert!(v.margin.abs() <= 1e-12 * v.rhs);
        }
    }

    #[test]
    fn sharpness_examples() {
        let probe = sharpness_probe(1, &params(0.0, 0.0), &[0.0, 0.9, 0.99, 0.999]).unwrap();
        assert_eq!(probe[0], (0.0, 1.0));
        assert_relative_eq!(probe[3].1, 0.5005, max_relative = 1e-14);
        assert!(probe.windows(2).all(|w| w[1].1 < w[0].1));
        // 1 - r^{m+1-p}/c_{m+1} for p = 2, m = 4
        let q = ClassParams::new(2, 0.5, 0.1, 0.3, 1.0, -0.5).unwrap();
        let c = c_coefficient(5, &q).unwrap();
        let probe = sharpness_probe(4, &q, &[0.5, 0.999]).unwrap();
        assert_relative_eq!(probe[0].1, 1.0 - 0.125 / c, max_relative = 1e-14);
        assert!((probe[1].1 - (1.0 - 1.0 / c)).abs() <= 1e-3 * (2.0 - 1.0 / c));
        assert!(sharpness_probe(1, &params(0.0, 0.0), &[0.9, 0.5]).is_err());
    }

    #[test]
    fn monomial_meets_every_bound() {
        let grid = GridSpec::new(vec![0.5, 0.9, 0.99], 360).unwrap();
        for m in 1..4 {
            let report = verify_partial_sum_bounds(
                &TruncatedPSeries::monomial(1),
                m,
                &params(0.0, 0.0),
                &grid,
                DEFAULT_BOUND_TOL,
            )
            .unwrap();
            assert!(report.all_hold() && report.tags.is_empty());
            assert!(report.checks.iter().all(|c| (c.computed - 1.0).abs() < 1e-15));
        }
    }

    #[test]
    fn extremal_function_is_nearly_sharp() {
        let grid = GridSpec::new(vec![0.5, 0.9, 0.99, 0.999], 720).unwrap();
        let q = params(0.0, 0.0);
        for m in 1..4 {
            let f = extremal_partial_sum(m, &q).unwrap();
            let report = verify_partial_sum_bounds(&f, m, &q, &grid, DEFAULT_BOUND_TOL).unwrap();
            assert!(report.all_hold(), "{:?}", report.first_failure());
            let gap = report.checks[0].computed - report.checks[0].bound;
            assert!((0.0..=2e-3).contains(&gap), "gap {gap}");
        }
    }

    #[test]
    fn non_members_are_rejected() {
        let f = TruncatedPSeries::new(1, [(2, 0.6)]).unwrap();
        let err =
            verify_partial_sum_bounds(&f, 1, &params(0.0, 0.0), &GridSpec::default(), DEFAULT_BOUND_TOL).unwrap_err();
        assert!(matches!(err, Error::NotAMember { .. }));
    }

    #[test]
    fn large_mu_is_tagged_not_asserted() {
        let q = params(0.9, 0.0);
        let f = criteria::random_member(&q, 4, 5, ClassTag::R, 1.0).unwrap();
        let report = verify_partial_sum_bounds(&f, 2, &q, &GridSpec::default(), DEFAULT_BOUND_TOL).unwrap();
        assert!(report.tags.iter().any(|t| t == HYPOTHESES_UNVERIFIED));
        assert!(report.checks.iter().all(|c| !c.asserted));
        assert!(report.all_hold());
    }

    #[test]
    fn derivative_bound_needs_its_own_hypothesis() {
        // c_2 = 1.5 < 2 while c_k still increases; f_2' vanishes inside the disk and
        // Re(f'/f_2') has no useful lower bound there
        let q = ClassParams::new(1, 0.0, 0.25, 0.0, 1.0, -1.0).unwrap();
        assert!(monotonicity_check(&q, 6).unwrap().ok);
        assert_eq!(derivative_hypothesis_violation(&q, 2, 3).unwrap(), Some(2));
        let c2 = c_coefficient(2, &q).unwrap();
        let c3 = c_coefficient(3, &q).unwrap();
        let f = TruncatedPSeries::new(1, [(2, 0.95 / c2), (3, 0.05 / c3)]).unwrap();
        let grid = GridSpec::new(vec![0.5, 0.75, 0.785, 0.9, 0.99], 720).unwrap();
        let report = verify_partial_sum_bounds(&f, 2, &q, &grid, DEFAULT_BOUND_TOL).unwrap();
        let deriv = &report.checks[2];
        assert!(!deriv.holds && !deriv.asserted, "{deriv:?}");
        assert!(report.all_hold());
        assert!(report.checks[0].asserted && report.checks[0].holds);
    }
}
