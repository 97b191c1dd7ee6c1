//! Coefficient neighborhoods, their inclusion radii, proximity levels and the
//! Cauchy-Euler construction.
//!
//! The neighborhood of `g` of radius `eps` holds every same-valence `f` with
//! `sum_k k |a_k - b_k| <= eps`. For the tail-free base point `z^p` this reads
//! `sum_k k a_k <= eps`.
//!
//! Several radii below rely on the criterion weights growing fast enough in `k`
//! (for instance `k * D <= (p+1) * W_k` for the first radius, with `W_k` the
//! criterion weight and `D = W_{p+1}`). That is true for moderate `mu` but fails for
//! `mu` close to one, so [`inclusion_check`] audits the weights over the sampled
//! support and tags its report [`HYPOTHESES_UNVERIFIED`] instead of asserting when
//! the audit fails.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::criteria::{self, ClassParams, ClassTag};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, VerificationReport, HYPOTHESES_UNVERIFIED};
use crate::series::{scan_max, Analytic, GridScan, GridSpec, TruncatedPSeries, DEFAULT_DENOMINATOR_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadiusSource {
    Thm1,
    Thm2,
    Thm5,
    UserSupplied,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodRadius {
    pub epsilon: f64,
    pub source: RadiusSource,
}

impl NeighborhoodRadius {
    pub fn user(epsilon: f64) -> Result<Self> {
        if epsilon >= 0.0 && epsilon.is_finite() {
            Ok(Self {
                epsilon,
                source: RadiusSource::UserSupplied,
            })
        } else {
            Err(Error::InvalidParams(vec![format!(
                "epsilon must be a nonnegative number (got {epsilon})"
            )]))
        }
    }
}

/// Parameter `phi` of the Cauchy-Euler equation
/// `z^2 f'' + 2(phi+1) z f' + phi(phi+1) f = (p+phi)(p+phi+1) g`; must exceed `-p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyEulerParam {
    pub phi: f64,
}

impl CauchyEulerParam {
    pub fn new(phi: f64, p: u32) -> Result<Self> {
        let param = Self { phi };
        param.check(p)?;
        Ok(param)
    }

    fn check(&self, p: u32) -> Result<()> {
        if self.phi.is_finite() && self.phi > -(p as f64) {
            Ok(())
        } else {
            Err(Error::Domain(format!("phi must exceed -p = -{p} (got {})", self.phi)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProximitySource {
    Thm3,
    Thm4,
    Measured,
}

/// A level `rho` in `[0, 1)`: `|f/g - 1| < 1 - rho` on the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProximityLevel {
    pub rho: f64,
    pub source: ProximitySource,
}

fn same_valence(f: &TruncatedPSeries, g: &TruncatedPSeries) -> Result<()> {
    if f.p() == g.p() {
        Ok(())
    } else {
        Err(Error::ValenceMismatch {
            left: f.p(),
            right: g.p(),
        })
    }
}

/// `sum_k k |a_k - b_k|` over the union of both supports.
pub fn coeff_distance(f: &TruncatedPSeries, g: &TruncatedPSeries) -> Result<f64> {
    same_valence(f, g)?;
    let top = f.degree().max(g.degree());
    Ok((f.p() + 1..=top)
        .map(|k| k as f64 * (f.coeff(k) - g.coeff(k)).abs())
        .sum())
}

/// Closed neighborhood membership: `coeff_distance(f, g) <= eps`.
pub fn in_neighborhood(f: &TruncatedPSeries, g: &TruncatedPSeries, eps: &NeighborhoodRadius) -> Result<bool> {
    Ok(coeff_distance(f, g)? <= eps.epsilon)
}

/// `(p+1)(A-B)(p-alpha) / ([(1-B) + (A-B)(p-alpha)] (1-mu)(p+delta))`.
pub fn epsilon_thm1(params: &ClassParams) -> NeighborhoodRadius {
    let epsilon = (params.p() + 1) as f64 * params.lemma_rhs() / params.lead_weight();
    NeighborhoodRadius {
        epsilon,
        source: RadiusSource::Thm1,
    }
}

/// `p (A-B)(p-alpha) / ([(1-B) + (A-B)(p-alpha)] (1-mu)(p+delta))`: the radius the
/// inclusion argument for the convex-type class actually delivers.
pub fn epsilon_thm2(params: &ClassParams) -> NeighborhoodRadius {
    let epsilon = params.p() as f64 * params.lemma_rhs() / params.lead_weight();
    NeighborhoodRadius {
        epsilon,
        source: RadiusSource::Thm2,
    }
}

/// The convex-type radius in its published form, which carries an extra factor
/// `p + 1`: `Gamma(p+delta) p (p+1) (A-B)(p-alpha) / ([..](1-mu) Gamma(p+delta+1))`.
pub fn epsilon_thm2_as_stated(params: &ClassParams) -> NeighborhoodRadius {
    let epsilon = (params.p() + 1) as f64 * epsilon_thm2(params).epsilon;
    NeighborhoodRadius {
        epsilon,
        source: RadiusSource::Thm2,
    }
}

/// `epsilon_thm1 * 2(p+phi+1)/(p+phi+2)`.
pub fn epsilon_thm5(params: &ClassParams, phi: CauchyEulerParam) -> Result<NeighborhoodRadius> {
    phi.check(params.p())?;
    let p = params.p() as f64;
    let factor = 2.0 * (p + phi.phi + 1.0) / (p + phi.phi + 2.0);
    Ok(NeighborhoodRadius {
        epsilon: epsilon_thm1(params).epsilon * factor,
        source: RadiusSource::Thm5,
    })
}

fn proximity(rho: f64, source: ProximitySource, d: f64, s: f64) -> Result<ProximityLevel> {
    if d <= s {
        return Err(Error::InvalidRho {
            rho,
            reason: format!("lead weight {d} does not exceed the criterion bound {s}"),
        });
    }
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::InvalidRho {
            rho,
            reason: "the level must lie in [0, 1)".into(),
        });
    }
    Ok(ProximityLevel { rho, source })
}

/// `rho_1 = 1 - eps D / ((p+1)(D - S))` with `D` the lead weight and `S = (A-B)(p-alpha)`.
pub fn rho1(params: &ClassParams, eps: &NeighborhoodRadius) -> Result<ProximityLevel> {
    let d = params.lead_weight();
    let s = params.lemma_rhs();
    let rho = 1.0 - eps.epsilon * d / ((params.p() + 1) as f64 * (d - s));
    proximity(rho, ProximitySource::Thm3, d, s)
}

/// `rho_2 = 1 - eps D / (D (p+1) - S)`.
pub fn rho2(params: &ClassParams, eps: &NeighborhoodRadius) -> Result<ProximityLevel> {
    let d = params.lead_weight();
    let s = params.lemma_rhs();
    let den = d * (params.p() + 1) as f64 - s;
    if den <= 0.0 {
        return Err(Error::InvalidRho {
            rho: f64::NAN,
            reason: format!("denominator {den} is not positive"),
        });
    }
    let rho = 1.0 - eps.epsilon * d / den;
    proximity(rho, ProximitySource::Thm4, d, s)
}

/// Largest `|f(z)/g(z) - 1|` over the grid.
pub fn proximity_level(f: &TruncatedPSeries, g: &TruncatedPSeries, grid: &GridSpec) -> Result<GridScan> {
    same_valence(f, g)?;
    scan_max(&grid.points(), |z| {
        let gz = g.evaluate(z);
        if gz.norm() <= DEFAULT_DENOMINATOR_TOL {
            return Err(Error::NearZeroDenominator {
                z,
                magnitude: gz.norm(),
            });
        }
        Ok((f.evaluate(z) / gz - 1.0).norm())
    })
}

/// Coefficient-wise solution of the Cauchy-Euler equation with right-hand side `g`:
/// `a_k = (p+phi)(p+phi+1) / ((k+phi)(k+phi+1)) * b_k`.
pub fn cauchy_euler_solve(g: &TruncatedPSeries, phi: CauchyEulerParam) -> Result<TruncatedPSeries> {
    phi.check(g.p())?;
    let p = g.p() as f64;
    let lead = (p + phi.phi) * (p + phi.phi + 1.0);
    Ok(g.map_tail(|k, b| {
        let kf = k as f64;
        lead / ((kf + phi.phi) * (kf + phi.phi + 1.0)) * b
    }))
}

/// Left minus right side of the Cauchy-Euler equation at `z`, as a complex number.
fn cauchy_euler_defect(f: &TruncatedPSeries, g: &TruncatedPSeries, phi: f64, z: Complex64) -> (Complex64, Complex64) {
    let p = g.p() as f64;
    let df = f.derivative();
    let ddf = df.derivative();
    let lhs = z * z * ddf.evaluate(z) + 2.0 * (phi + 1.0) * z * df.evaluate(z) + phi * (phi + 1.0) * f.evaluate(z);
    let rhs = (p + phi) * (p + phi + 1.0) * g.evaluate(z);
    (lhs - rhs, rhs)
}

/// `|z^2 f'' + 2(phi+1) z f' + phi(phi+1) f - (p+phi)(p+phi+1) g|` at `z`.
pub fn cauchy_euler_residual(f: &TruncatedPSeries, g: &TruncatedPSeries, phi: CauchyEulerParam, z: Complex64) -> f64 {
    cauchy_euler_defect(f, g, phi.phi, z).0.norm()
}

/// A seeded neighbor of `g`: a signed perturbation of weighted size at most `eps`
/// on indices `p+1 ..= deg g + 2`, clamped so coefficients stay nonnegative.
pub fn random_neighbor(g: &TruncatedPSeries, eps: f64, seed: u64) -> TruncatedPSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = g.p();
    let top = g.degree().max(p + 1) + 2;
    let raw: Vec<(u32, f64)> = (p + 1..=top).map(|k| (k, rng.random_range(-1.0..=1.0))).collect();
    let weight: f64 = raw.iter().map(|&(k, u)| k as f64 * u.abs()).sum();
    let budget = eps * rng.random_range(f64::EPSILON..=1.0);
    let scale = if weight > 0.0 { budget / weight } else { 0.0 };
    let tail: Vec<(u32, f64)> = raw
        .into_iter()
        .map(|(k, u)| (k, (g.coeff(k) + scale * u).max(0.0)))
        .collect();
    TruncatedPSeries::new(p, tail).expect("clamped coefficients are nonnegative")
}

/// First index `k` in `p+1..=degree` where the criterion weight grows too slowly
/// for the given theorem's argument, if any.
pub fn radius_hypothesis_violation(params: &ClassParams, theorem: NeighborhoodTheorem, degree: u32) -> Option<u32> {
    let p = params.p();
    let d = params.lead_weight();
    (p + 1..=degree).find(|&k| {
        let w = params.lemma_weight(k);
        let kf = k as f64;
        let needed = match theorem {
            // k a_k <= (p+1) W_k a_k / D
            NeighborhoodTheorem::Thm1 | NeighborhoodTheorem::Thm5 => kf * d <= (p + 1) as f64 * w,
            // k a_k <= k W_k a_k / D and a_k <= W_k a_k / D
            NeighborhoodTheorem::Thm2 | NeighborhoodTheorem::Thm3 => d <= w,
            // a_k <= k W_k a_k / ((p+1) D)
            NeighborhoodTheorem::Thm4 => (p + 1) as f64 * d <= kf * w,
        };
        !needed
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NeighborhoodTheorem {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
}

impl TryFrom<u32> for NeighborhoodTheorem {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Ok(match n {
            1 => Self::Thm1,
            2 => Self::Thm2,
            3 => Self::Thm3,
            4 => Self::Thm4,
            5 => Self::Thm5,
            other => {
                return Err(Error::Domain(format!(
                    "no neighborhood theorem {other} (expected 1 to 5)"
                )))
            }
        })
    }
}

/// Knobs for [`inclusion_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionOptions {
    /// Random members use tail indices up to `p + extra_degree`.
    pub extra_degree: u32,
    pub phi: f64,
    /// Neighborhood radius for the proximity theorems.
    pub eps: f64,
    pub thm2_as_stated: bool,
    pub grid: GridSpec,
    pub coefficient_tol: f64,
    pub proximity_tol: f64,
    pub ode_tol: f64,
}

impl Default for InclusionOptions {
    fn default() -> Self {
        Self {
            extra_degree: 6,
            phi: 0.0,
            eps: 0.1,
            thm2_as_stated: false,
            grid: GridSpec {
                radii: vec![0.5, 0.9, 0.99, 0.999],
                ..GridSpec::default()
            },
            coefficient_tol: 1e-12,
            proximity_tol: 1e-9,
            ode_tol: 1e-10,
        }
    }
}

const LOADS: [f64; 3] = [1.0, 0.5, 0.25];

/// Worst-case record over samples: keeps the one with the smallest margin.
fn worst(records: impl IntoIterator<Item = CheckRecord>) -> Option<CheckRecord> {
    records.into_iter().min_by(|a, b| a.margin.total_cmp(&b.margin))
}

/// Monte-Carlo check of one neighborhood theorem over `samples` seeded members.
pub fn inclusion_check(
    theorem: NeighborhoodTheorem,
    params: &ClassParams,
    samples: usize,
    seed: u64,
    opts: &InclusionOptions,
) -> Result<VerificationReport> {
    let p = params.p();
    let degree = p + opts.extra_degree.max(1);
    let mut report = VerificationReport::new(format!("neigh check {theorem:?}")).with_params(params);
    let hypothesis = radius_hypothesis_violation(params, theorem, degree);
    if let Some(k) = hypothesis {
        report.tag(HYPOTHESES_UNVERIFIED);
        report.tag(format!("criterion weights grow too slowly at k = {k}"));
    }
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let sample_seeds: Vec<u64> = (0..samples).map(|_| seeds.random()).collect();
    let which = match theorem {
        NeighborhoodTheorem::Thm2 | NeighborhoodTheorem::Thm4 => ClassTag::P,
        _ => ClassTag::R,
    };
    let members = sample_seeds
        .iter()
        .enumerate()
        .map(|(i, &s)| criteria::random_member(params, degree, s, which, LOADS[i % LOADS.len()]))
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    match theorem {
        NeighborhoodTheorem::Thm1 | NeighborhoodTheorem::Thm2 => {
            let (eps, extremal) = if theorem == NeighborhoodTheorem::Thm1 {
                (epsilon_thm1(params), criteria::extremal_r(params, p + 1)?)
            } else if opts.thm2_as_stated {
                (epsilon_thm2_as_stated(params), criteria::extremal_p(params, p + 1)?)
            } else {
                (epsilon_thm2(params), criteria::extremal_p(params, p + 1)?)
            };
            let base = TruncatedPSeries::monomial(p);
            let ratio = |f: &TruncatedPSeries| -> Result<f64> { Ok(coeff_distance(f, &base)? / eps.epsilon) };
            let mut sample_records = Vec::new();
            for f in &members {
                sample_records.push(CheckRecord::at_most(
                    "max weighted tail sum / epsilon",
                    ratio(f)?,
                    1.0,
                    opts.coefficient_tol / eps.epsilon,
                ));
            }
            records.extend(worst(sample_records));
            records.push(CheckRecord::close_to(
                "extremal weighted tail sum / epsilon",
                ratio(&extremal)?,
                1.0,
                1e-12,
            ));
        }
        NeighborhoodTheorem::Thm3 | NeighborhoodTheorem::Thm4 => {
            let radius = NeighborhoodRadius::user(opts.eps)?;
            let level = if theorem == NeighborhoodTheorem::Thm3 {
                rho1(params, &radius)?
            } else {
                rho2(params, &radius)?
            };
            let mut sample_records = Vec::new();
            for (g, &s) in members.iter().zip(&sample_seeds) {
                let f = random_neighbor(g, opts.eps, s ^ 0x5bd1_e995);
                let dist = coeff_distance(&f, g)?;
                sample_records.push(CheckRecord::at_most(
                    "neighbor distance",
                    dist,
                    opts.eps,
                    opts.coefficient_tol,
                ));
                let scan = proximity_level(&f, g, &opts.grid)?;
                report.discarded += scan.discarded;
                sample_records.push(
                    CheckRecord::at_most(
                        "max |f/g - 1| against 1 - rho",
                        scan.value,
                        1.0 - level.rho,
                        opts.proximity_tol,
                    )
                    .with_witness(scan.witness),
                );
            }
            for name in ["neighbor distance", "max |f/g - 1| against 1 - rho"] {
                records.extend(worst(sample_records.iter().filter(|r| r.name == name).cloned()));
            }
        }
        NeighborhoodTheorem::Thm5 => {
            let phi = CauchyEulerParam::new(opts.phi, p)?;
            let eps = epsilon_thm5(params, phi)?;
            let mut dist_records = Vec::new();
            let mut ode_records = Vec::new();
            for (g, &s) in members.iter().zip(&sample_seeds) {
                let f = cauchy_euler_solve(g, phi)?;
                dist_records.push(CheckRecord::at_most(
                    "distance to right-hand side",
                    coeff_distance(&f, g)?,
                    eps.epsilon,
                    opts.coefficient_tol,
                ));
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                for _ in 0..50 {
                    let z = Complex64::from_polar(
                        rng.random_range(0.05..=0.9),
                        rng.random_range(0.0..std::f64::consts::TAU),
                    );
                    let (defect, rhs) = cauchy_euler_defect(&f, g, phi.phi, z);
                    ode_records.push(
                        CheckRecord::at_most("relative ODE residual", defect.norm() / rhs.norm(), 0.0, opts.ode_tol)
                            .with_witness(z),
                    );
                }
            }
            records.extend(worst(dist_records));
            records.extend(worst(ode_records));
        }
    }
    let unverified = hypothesis.is_some();
    for r in records {
        report.push(if unverified { r.informational() } else { r });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn worked() -> ClassParams {
        ClassParams::new(1, 0.0, 0.0, 1.0, 1.0, -1.0).unwrap()
    }

    fn series(p: u32, tail: &[(u32, f64)]) -> TruncatedPSeries {
        TruncatedPSeries::new(p, tail.iter().copied()).unwrap()
    }

    #[test]
    fn distance_examples() {
        let f = series(1, &[(2, 0.2)]);
        let g = series(1, &[(2, 0.1)]);
        assert_eq!(coeff_distance(&f, &f).unwrap(), 0.0);
        assert_relative_eq!(coeff_distance(&f, &g).unwrap(), 0.2, max_relative = 1e-15);
        let h = series(1, &[(3, 0.1)]);
        assert_relative_eq!(coeff_distance(&h, &g).unwrap(), 0.5, max_relative = 1e-15);
        assert!(matches!(
            coeff_distance(&f, &TruncatedPSeries::monomial(2)),
            Err(Error::ValenceMismatch { .. })
        ));
    }

    #[test]
    fn neighborhood_examples() {
        let f = series(1, &[(2, 0.2)]);
        let g = series(1, &[(2, 0.1)]);
        assert!(in_neighborhood(&f, &f, &NeighborhoodRadius::user(0.0).unwrap()).unwrap());
        assert!(!in_neighborhood(&f, &g, &NeighborhoodRadius::user(0.1).unwrap()).unwrap());
        assert!(in_neighborhood(&f, &g, &NeighborhoodRadius::user(0.2).unwrap()).unwrap());
        assert!(NeighborhoodRadius::user(-1.0).is_err());
    }

    #[test]
    fn radius_examples() {
        assert_eq!(epsilon_thm1(&worked()).epsilon, 0.5);
        let half_mu = ClassParams::new(1, 0.0, 0.5, 1.0, 1.0, -1.0).unwrap();
        assert_eq!(epsilon_thm1(&half_mu).epsilon, 1.0);
        let near = ClassParams::new(1, 1.0 - 1e-12, 0.0, 1.0, 1.0, -1.0).unwrap();
        assert!(epsilon_thm1(&near).epsilon < 1e-11);

        assert_eq!(epsilon_thm2(&worked()).epsilon, 0.25);
        assert_eq!(epsilon_thm2_as_stated(&worked()).epsilon, 0.5);
        let p2 = ClassParams::new(2, 1.0, 0.0, 0.0, 1.0, -1.0).unwrap();
        assert_eq!(epsilon_thm2(&p2).epsilon, 0.5);
        assert!(epsilon_thm2(&near).epsilon < 1e-11);

        let e = epsilon_thm5(&worked(), CauchyEulerParam::new(0.0, 1).unwrap()).unwrap();
        assert_relative_eq!(e.epsilon, 2.0 / 3.0, max_relative = 1e-15);
        let e = epsilon_thm5(&worked(), CauchyEulerParam { phi: 1e9 }).unwrap();
        assert_relative_eq!(e.epsilon, 1.0, max_relative = 1e-8);
        let e = epsilon_thm5(&worked(), CauchyEulerParam::new(-0.5, 1).unwrap()).unwrap();
        assert_relative_eq!(e.epsilon, 0.6, max_relative = 1e-15);
        assert!(CauchyEulerParam::new(-1.0, 1).is_err());
        assert!(epsilon_thm5(&worked(), CauchyEulerParam { phi: -2.0 }).is_err());
    }

    #[test]
    fn rho_examples() {
        let eps = NeighborhoodRadius::user(0.1).unwrap();
        assert_relative_eq!(
            rho1(&worked(), &eps).unwrap().rho,
            0.933_333_333_333_333_3,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            rho2(&worked(), &eps).unwrap().rho,
            0.942_857_142_857_143,
            max_relative = 1e-15
        );
        let zero = NeighborhoodRadius::user(0.0).unwrap();
        assert!(matches!(rho1(&worked(), &zero), Err(Error::InvalidRho { .. })));
        assert!(matches!(rho2(&worked(), &zero), Err(Error::InvalidRho { .. })));
        let degenerate = ClassParams::new(1, 0.0, 0.999_999, 1.0, 1.0, -1.0).unwrap();
        assert!(matches!(rho1(&degenerate, &eps), Err(Error::InvalidRho { .. })));
        let huge = NeighborhoodRadius::user(100.0).unwrap();
        assert!(matches!(rho1(&worked(), &huge), Err(Error::InvalidRho { .. })));
    }

    #[test]
    fn rho2_exceeds_rho1_when_both_valid() {
        for p in 1..4 {
            for &(alpha, mu, delta, b) in &[(0.0, 0.0, 1.0, -1.0), (0.5, 0.2, 0.3, -0.5), (0.2, 0.4, 0.0, 0.0)] {
                let params = ClassParams::new(p, alpha, mu, delta, 1.0, b).unwrap();
                for &e in &[0.01, 0.1, 0.3] {
                    let eps = NeighborhoodRadius::user(e).unwrap();
                    if let (Ok(r1), Ok(r2)) = (rho1(&params, &eps), rho2(&params, &eps)) {
                        if p > 1 {
                            assert!(r2.rho > r1.rho);
                        } else {
                            assert!(r2.rho >= r1.rho);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn proximity_examples() {
        let grid = GridSpec::new(vec![0.9], 720).unwrap();
        let f = series(1, &[(2, 0.2)]);
        let id = TruncatedPSeries::monomial(1);
        assert_eq!(proximity_level(&f, &f, &grid).unwrap().value, 0.0);
        assert_relative_eq!(
            proximity_level(&f, &id, &grid).unwrap().value,
            0.18,
            max_relative = 1e-12
        );
        let grid = GridSpec::new(vec![0.99], 720).unwrap();
        let g = series(1, &[(2, 0.5)]);
        let scan = proximity_level(&id, &g, &grid).unwrap();
        assert_relative_eq!(scan.value, 0.980_198_019_801_980_2, max_relative = 1e-12);
        assert_eq!(scan.witness.im, 0.0);
    }

    #[test]
    fn cauchy_euler_examples() {
        let zero = CauchyEulerParam::new(0.0, 1).unwrap();
        let id = TruncatedPSeries::monomial(1);
        assert_eq!(cauchy_euler_solve(&id, zero).unwrap(), id);
        let f = cauchy_euler_solve(&series(1, &[(2, 0.3)]), zero).unwrap();
        assert_relative_eq!(f.coeff(2), 0.1, max_relative = 1e-15);
        let one = CauchyEulerParam::new(1.0, 2).unwrap();
        let f = cauchy_euler_solve(&series(2, &[(3, 0.5)]), one).unwrap();
        assert_relative_eq!(f.coeff(3), 0.3, max_relative = 1e-15);
        assert!(cauchy_euler_solve(&id, CauchyEulerParam { phi: -1.0 }).is_err());

        assert_eq!(cauchy_euler_residual(&id, &id, zero, Complex64::new(0.5, 0.0)), 0.0);
        let g = series(1, &[(2, 0.3), (4, 0.05)]);
        let f = cauchy_euler_solve(&g, zero).unwrap();
        let z = Complex64::new(0.3, 0.6);
        assert!(cauchy_euler_residual(&f, &g, zero, z) <= 1e-14);
        let bumped = TruncatedPSeries::new(1, f.tail().map(|(k, a)| (k, a + 0.1))).unwrap();
        assert!(cauchy_euler_residual(&bumped, &g, zero, z) > 1e-3);
    }

    #[test]
    fn worked_inclusion_checks_hold() {
        let opts = InclusionOptions::default();
        for n in 1..=5 {
            let thm = NeighborhoodTheorem::try_from(n).unwrap();
            let report = inclusion_check(thm, &worked(), 40, 7, &opts).unwrap();
            assert!(report.tags.is_empty(), "{thm:?}: {:?}", report.tags);
            assert!(report.all_hold(), "{thm:?}: {:?}", report.first_failure());
            assert_eq!(report, inclusion_check(thm, &worked(), 40, 7, &opts).unwrap());
        }
        let empty = inclusion_check(NeighborhoodTheorem::Thm1, &worked(), 0, 7, &opts).unwrap();
        assert_eq!(empty.checks.len(), 1);
    }

    #[test]
    fn radius_fails_when_weights_shrink() {
        // mu = 0.9 makes the weight at k = 3 smaller than at k = 2, and the single
        // term boundary member at k = 3 escapes the first radius
        let params = ClassParams::new(1, 0.0, 0.9, 0.0, 1.0, -1.0).unwrap();
        assert_eq!(
            radius_hypothesis_violation(&params, NeighborhoodTheorem::Thm1, 4),
            Some(3)
        );
        let f = criteria::extremal_r(&params, 3).unwrap();
        let sum = coeff_distance(&f, &TruncatedPSeries::monomial(1)).unwrap();
        assert!(sum > epsilon_thm1(&params).epsilon);
        let report = inclusion_check(NeighborhoodTheorem::Thm1, &params, 20, 1, &InclusionOptions::default()).unwrap();
        assert!(report.tags.iter().any(|t| t == HYPOTHESES_UNVERIFIED));
        assert!(report.all_hold());
        assert!(report.checks.iter().all(|c| !c.asserted));
    }

    fn tail_strategy() -> impl Strategy<Value = TruncatedPSeries> {
        prop::collection::vec(0.0f64..1.0, 0..6)
            .prop_map(|c| TruncatedPSeries::new(2, c.iter().enumerate().map(|(i, &a)| (i as u32 + 3, a))).unwrap())
    }

    proptest! {
        #[test]
        fn distance_is_a_metric(f in tail_strategy(), g in tail_strategy(), h in tail_strategy()) {
            let fg = coeff_distance(&f, &g).unwrap();
            prop_assert_eq!(fg, coeff_distance(&g, &f).unwrap());
            prop_assert!(fg <= coeff_distance(&f, &h).unwrap() + coeff_distance(&h, &g).unwrap() + 1e-12);
            prop_assert_eq!(coeff_distance(&f, &f).unwrap(), 0.0);
        }

        #[test]
        fn neighbors_stay_within_radius(seed in 0u64..500, eps in 0.0f64..1.0) {
            let g = criteria::random_member(&worked(), 6, seed, ClassTag::R, 0.5).unwrap();
            let f = random_neighbor(&g, eps, seed);
            prop_assert!(coeff_distance(&f, &g).unwrap() <= eps + 1e-12);
        }
    }
}
