//! The verification campaign: ten numbered acceptance criteria, each producing a
//! report, folded into one aggregate report.
//!
//! Every random draw descends from the campaign seed through sequentially seeded
//! ChaCha streams, so two runs with the same seed produce identical records apart
//! from wall-clock timings. Criteria run concurrently but are collected in order.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{self, ClassParams, ClassTag};
use crate::error::{Error, Result};
use crate::means::{self, IntegralMeansQuery, MeansTolerance, DEFAULT_RADII, DEFAULT_TAUS};
use crate::neighborhoods::{self, CauchyEulerParam, InclusionOptions, NeighborhoodRadius, NeighborhoodTheorem};
use crate::operator::{self, OperatorParams, DEFAULT_ORACLE_NODES};
use crate::oracles;
use crate::psums;
use crate::report::{CheckRecord, VerificationReport, HYPOTHESES_UNVERIFIED};
use crate::series::{Analytic, GridSpec, TruncatedPSeries};

pub const CRITERIA: [&str; 10] = [
    "operator series agrees with the integral oracle",
    "coefficient criteria imply the subordination definitions",
    "P-membership equals R-membership of z f'/p",
    "members lie in the closed-form neighborhoods of z^p",
    "neighbors of members satisfy the proximity bound",
    "Cauchy-Euler solutions satisfy the ODE and the radius",
    "integral means are dominated by the comparator",
    "partial-sum ratios respect their lower bounds",
    "a non-monotone weight sequence is tagged, not asserted",
    "a repeated run reproduces every record",
];

/// Relative tolerance for the operator oracle comparison.
pub const OPERATOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignOptions {
    pub seed: u64,
    pub oracle_nodes: usize,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            oracle_nodes: DEFAULT_ORACLE_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub report: VerificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub criteria: Vec<CriterionResult>,
    pub aggregate: VerificationReport,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    /// Copy with every wall-clock field zeroed.
    pub fn without_wall_time(&self) -> Self {
        Self {
            criteria: self
                .criteria
                .iter()
                .map(|c| CriterionResult {
                    report: c.report.without_wall_time(),
                    ..c.clone()
                })
                .collect(),
            aggregate: self.aggregate.without_wall_time(),
        }
    }
}

/// `p = 1, alpha = 0, mu = 0, delta = 1, A = 1, B = -1`.
pub fn worked_params() -> ClassParams {
    ClassParams::new(1, 0.0, 0.0, 1.0, 1.0, -1.0).expect("valid")
}

/// Five parameter tuples spanning `p = 1, 2, 3`, all with slowly varying operator
/// weights so that every theorem's hypotheses hold.
pub fn campaign_param_sets() -> Vec<ClassParams> {
    [
        (1, 0.0, 0.0, 1.0, 1.0, -1.0),
        (1, 0.5, 0.2, 0.5, 0.8, -0.5),
        (2, 0.5, 0.1, 0.3, 1.0, -0.5),
        (2, 1.0, 0.15, 1.0, 0.6, 0.0),
        (3, 1.5, 0.05, 0.8, 0.9, -1.0),
    ]
    .into_iter()
    .map(|(p, alpha, mu, delta, a, b)| ClassParams::new(p, alpha, mu, delta, a, b).expect("valid"))
    .collect()
}

/// `mu = 0.9` shrinks `c_{p+1}` below one.
pub fn non_monotone_params() -> ClassParams {
    ClassParams::new(1, 0.0, 0.9, 0.0, 1.0, -1.0).expect("valid")
}

const LOADS: [f64; 3] = [0.25, 0.5, 1.0];
const EXTRA_DEGREE: u32 = 6;

fn seeds(seed: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random()).collect()
}

/// Copies `from`'s records and tags into `into` under a label.
fn absorb(into: &mut VerificationReport, label: &str, from: VerificationReport) {
    for mut check in from.checks {
        check.name = format!("{label}: {}", check.name);
        into.push(check);
    }
    for tag in from.tags {
        into.tag(format!("{label}: {tag}"));
    }
    into.discarded += from.discarded;
}

fn worst(records: impl IntoIterator<Item = CheckRecord>) -> Option<CheckRecord> {
    records.into_iter().min_by(|a, b| a.margin.total_cmp(&b.margin))
}

fn set_label(i: usize, params: &ClassParams) -> String {
    format!("set {} (p = {})", i + 1, params.p())
}

fn random_series(rng: &mut ChaCha8Rng, p: u32) -> Result<TruncatedPSeries> {
    let degree = p + rng.random_range(1..=EXTRA_DEGREE);
    TruncatedPSeries::new(p, (p + 1..=degree).map(|k| (k, rng.random_range(0.0..0.5))))
}

fn operator_oracle(seed: u64, opts: &CampaignOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("operator oracle");
    let samples: Vec<(TruncatedPSeries, OperatorParams, Complex64)> = seeds(seed, 100)
        .into_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let p = rng.random_range(1..=3);
            let params = OperatorParams::new(rng.random_range(0.0..0.9), rng.random_range(0.05..=1.0))?;
            let z = Complex64::from_polar(
                0.9 * rng.random::<f64>().sqrt(),
                rng.random_range(0.0..std::f64::consts::TAU),
            );
            Ok((random_series(&mut rng, p)?, params, z))
        })
        .collect::<Result<_>>()?;
    let errors = samples
        .par_iter()
        .map(|(f, params, z)| {
            let series = operator::apply_rafid_series(f, *params).evaluate(*z);
            let oracle = operator::rafid_integral_oracle(f, *params, *z, opts.oracle_nodes)?;
            Ok(CheckRecord::at_most(
                "relative oracle discrepancy",
                (oracle - series).norm() / (1.0 + series.norm()),
                OPERATOR_TOL,
                0.0,
            )
            .with_witness(*z))
        })
        .collect::<Result<Vec<_>>>()?;
    report.extend_worst(errors);

    let z = Complex64::new(0.3, 0.5);
    let params = OperatorParams::new(0.4, 0.7)?;
    for p in 1..=3 {
        let monomial = TruncatedPSeries::monomial(p);
        report.push(CheckRecord::flag(
            format!("series image of z^{p} is z^{p}"),
            operator::apply_rafid_series(&monomial, params) == monomial,
        ));
        let oracle = operator::rafid_integral_oracle(&monomial, params, z, opts.oracle_nodes)?;
        report.push(
            CheckRecord::close_to(
                format!("integral image of z^{p} at z"),
                (oracle - z.powu(p)).norm(),
                0.0,
                1e-12,
            )
            .with_witness(z),
        );
    }
    Ok(report)
}

fn subordination(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("subordination residuals");
    let grid = GridSpec::new(vec![0.5, 0.9, 0.99], 720)?;
    let sets = campaign_param_sets();
    let jobs: Vec<(usize, ClassTag)> = (0..sets.len())
        .flat_map(|i| [(i, ClassTag::R), (i, ClassTag::P)])
        .collect();
    let job_seeds = seeds(seed, jobs.len());
    let per_job = jobs
        .par_iter()
        .zip(job_seeds)
        .map(|(&(i, which), s)| {
            let params = &sets[i];
            let mut scans = Vec::new();
            let mut discarded = 0;
            for (j, member_seed) in seeds(s, 40).into_iter().enumerate() {
                let f = criteria::random_member(
                    params,
                    params.p() + EXTRA_DEGREE,
                    member_seed,
                    which,
                    LOADS[j % LOADS.len()],
                )?;
                let scan = criteria::subordination_residual(&f, params, which, &grid)?;
                discarded += scan.discarded;
                let mut record = CheckRecord::at_most("max subordination residual", scan.value, 1.0, 0.0);
                // the definition needs a strict inequality
                record.holds = scan.value < 1.0;
                scans.push(record.with_witness(scan.witness));
            }
            let mut part = VerificationReport::new("");
            part.extend_worst(scans);
            part.discarded = discarded;
            Ok((format!("{} class {which:?}", set_label(i, params)), part))
        })
        .collect::<Result<Vec<_>>>()?;
    for (label, part) in per_job {
        absorb(&mut report, &label, part);
    }
    Ok(report)
}

fn transform_equivalence(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("P/R equivalence");
    let sets = campaign_param_sets();
    let mut disagreements = 0usize;
    let mut p_members = 0usize;
    for (i, s) in seeds(seed, 500).into_iter().enumerate() {
        let params = &sets[i % sets.len()];
        let p = params.p();
        let load = LOADS[(i / sets.len()) % LOADS.len()];
        let f = match (i / sets.len()) % 4 {
            0 => criteria::random_member(params, p + EXTRA_DEGREE, s, ClassTag::P, load)?,
            1 => criteria::extremal_p(params, p + 1 + (s % EXTRA_DEGREE as u64) as u32)?,
            2 => criteria::random_member(params, p + EXTRA_DEGREE, s, ClassTag::P, 1.0)?.scale_tail(1.0 + load),
            _ => criteria::random_member(params, p + EXTRA_DEGREE, s, ClassTag::R, load)?,
        };
        let in_p = criteria::is_member_p(&f, params)?.member;
        let in_r = criteria::is_member_r(&criteria::p_transform(&f), params)?.member;
        p_members += in_p as usize;
        disagreements += (in_p != in_r) as usize;
    }
    report.push(CheckRecord::at_most(
        "verdict disagreements out of 500",
        disagreements as f64,
        0.0,
        0.0,
    ));
    report.push(CheckRecord::at_least("P-members among the samples", p_members as f64, 1.0, 0.0).informational());
    report.push(
        CheckRecord::at_least("non-members among the samples", (500 - p_members) as f64, 1.0, 0.0).informational(),
    );
    Ok(report)
}

/// Runs `inclusion_check` for each parameter set and insists that no set needed
/// the unverified-hypothesis escape hatch.
fn inclusion_over_sets(
    report: &mut VerificationReport,
    theorem: NeighborhoodTheorem,
    sets: &[ClassParams],
    samples: usize,
    seed: u64,
    opts: &InclusionOptions,
) -> Result<()> {
    let parts = sets
        .par_iter()
        .zip(seeds(seed, sets.len()))
        .map(|(params, s)| neighborhoods::inclusion_check(theorem, params, samples, s, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut verified = true;
    for (i, (params, part)) in sets.iter().zip(parts).enumerate() {
        verified &= !part.tags.iter().any(|t| t == HYPOTHESES_UNVERIFIED);
        absorb(report, &format!("{theorem:?} {}", set_label(i, params)), part);
    }
    report.push(CheckRecord::flag(
        format!("{theorem:?} hypotheses verified for every set"),
        verified,
    ));
    Ok(())
}

fn neighborhood_radii(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("neighborhood radii");
    let opts = InclusionOptions::default();
    let [s1, s2] = seeds(seed, 2)[..] else { unreachable!() };
    inclusion_over_sets(
        &mut report,
        NeighborhoodTheorem::Thm1,
        &campaign_param_sets(),
        40,
        s1,
        &opts,
    )?;
    inclusion_over_sets(
        &mut report,
        NeighborhoodTheorem::Thm2,
        &campaign_param_sets(),
        40,
        s2,
        &opts,
    )?;
    report.push(CheckRecord::close_to(
        "worked-set R radius",
        neighborhoods::epsilon_thm1(&worked_params()).epsilon,
        0.5,
        1e-12,
    ));
    Ok(report)
}

fn proximity(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("proximity");
    let opts = InclusionOptions::default();
    let sets = campaign_param_sets();
    inclusion_over_sets(
        &mut report,
        NeighborhoodTheorem::Thm3,
        &[sets[0], sets[2]],
        50,
        seed,
        &opts,
    )?;
    let rho = neighborhoods::rho1(&worked_params(), &NeighborhoodRadius::user(0.1)?)?;
    report.push(CheckRecord::close_to(
        "worked-set level at eps = 0.1",
        rho.rho,
        14.0 / 15.0,
        1e-12,
    ));
    Ok(report)
}

fn cauchy_euler(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("Cauchy-Euler");
    let [s1, s2] = seeds(seed, 2)[..] else { unreachable!() };
    inclusion_over_sets(
        &mut report,
        NeighborhoodTheorem::Thm5,
        &campaign_param_sets(),
        10,
        s1,
        &InclusionOptions::default(),
    )?;
    let shifted = InclusionOptions {
        phi: 1.5,
        ..InclusionOptions::default()
    };
    let mut part = VerificationReport::new("");
    inclusion_over_sets(
        &mut part,
        NeighborhoodTheorem::Thm5,
        &campaign_param_sets()[..2],
        10,
        s2,
        &shifted,
    )?;
    absorb(&mut report, "phi = 1.5", part);
    let eps = neighborhoods::epsilon_thm5(&worked_params(), CauchyEulerParam::new(0.0, 1)?)?;
    report.push(CheckRecord::close_to(
        "worked-set radius at phi = 0",
        eps.epsilon,
        2.0 / 3.0,
        1e-12,
    ));
    Ok(report)
}

fn integral_means(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("integral means");
    let tol = MeansTolerance::default();
    let sets = campaign_param_sets();
    let parts = sets
        .par_iter()
        .zip(seeds(seed, sets.len()))
        .map(|(params, s)| {
            let mut excess = Vec::new();
            let mut parseval = Vec::new();
            for (j, member_seed) in seeds(s, 20).into_iter().enumerate() {
                let f = criteria::random_member(
                    params,
                    params.p() + EXTRA_DEGREE,
                    member_seed,
                    ClassTag::R,
                    LOADS[j % LOADS.len()],
                )?;
                for cell in means::verify_matrix(&f, params, &DEFAULT_TAUS, &DEFAULT_RADII, 64, &tol)? {
                    let witness = Complex64::new(cell.r, 0.0);
                    excess.push(
                        CheckRecord::at_most(
                            format!("(lhs - rhs)/(1 + rhs) at tau = {}", cell.tau),
                            (cell.lhs - cell.rhs) / (1.0 + cell.rhs),
                            0.0,
                            tol.holds,
                        )
                        .with_witness(witness),
                    );
                }
                for &r in &DEFAULT_RADII {
                    let value = means::mean_integral(&f, &IntegralMeansQuery::new(r, 2.0, 64)?, &tol)?.value;
                    let exact = oracles::parseval_mean(&f.to_polynomial(), r);
                    parseval.push(
                        CheckRecord::at_most(
                            "relative gap to the Parseval sum",
                            (value - exact).abs() / exact,
                            1e-10,
                            0.0,
                        )
                        .with_witness(Complex64::new(r, 0.0)),
                    );
                }
            }
            let mut part = VerificationReport::new("");
            part.extend_worst(excess);
            part.extend_worst(parseval);
            Ok(part)
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, (params, part)) in sets.iter().zip(parts).enumerate() {
        absorb(&mut report, &set_label(i, params), part);
    }
    Ok(report)
}

fn partial_sums(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("partial sums");
    let grid = GridSpec::new(vec![0.5, 0.9, 0.99, 0.999], 720)?;
    let sets = campaign_param_sets();
    let parts = sets
        .par_iter()
        .zip(seeds(seed, sets.len()))
        .map(|(params, s)| {
            let p = params.p();
            let mut records: Vec<CheckRecord> = Vec::new();
            let mut verified = true;
            let mut discarded = 0;
            for (j, member_seed) in seeds(s, 18).into_iter().enumerate() {
                let m = p + (j % 3) as u32;
                let f = criteria::random_member(
                    params,
                    p + EXTRA_DEGREE,
                    member_seed,
                    ClassTag::R,
                    LOADS[j % LOADS.len()],
                )?;
                let r = psums::verify_partial_sum_bounds(&f, m, params, &grid, psums::DEFAULT_BOUND_TOL)?;
                verified &= r.tags.is_empty();
                discarded += r.discarded;
                records.extend(r.checks);
            }
            let mut part = VerificationReport::new("");
            for name in ["Re(f/f_m)", "Re(f_m/f)", "Re(f'/f_m')", "Re(f_m'/f')"] {
                part.extend_worst(records.iter().filter(|r| r.name == name).cloned());
            }
            part.push(CheckRecord::flag("hypotheses verified for every member", verified));
            for m in [p, p + 1] {
                let b = psums::bounds(m, params)?;
                let (_, probe) = psums::sharpness_probe(m, params, &[0.999])?[0];
                part.push(CheckRecord::close_to(
                    format!("extremal Re(f/f_m) at r = 0.999, m = {m}"),
                    probe,
                    b.b_ratio,
                    1e-3 * (1.0 + b.b_ratio.abs()),
                ));
            }
            part.discarded = discarded;
            Ok(part)
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, (params, part)) in sets.iter().zip(parts).enumerate() {
        absorb(&mut report, &set_label(i, params), part);
    }
    let factorial = ClassParams::new(1, 0.0, 0.0, 0.0, 1.0, -1.0)?;
    report.push(CheckRecord::close_to(
        "anchor bound for m = 1",
        psums::bounds(1, &factorial)?.b_ratio,
        0.5,
        1e-12,
    ));
    let (_, probe) = psums::sharpness_probe(1, &factorial, &[0.999])?[0];
    report.push(CheckRecord::close_to("anchor probe at r = 0.999", probe, 0.5005, 1e-12));
    Ok(report)
}

fn monotonicity_audit(seed: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("monotonicity audit");
    let params = non_monotone_params();
    let p = params.p();
    let audit = psums::monotonicity_check(&params, p + 8)?;
    report.push(CheckRecord::flag(
        "audit fails at k = p + 1",
        audit.first_violation == Some(p + 1),
    ));
    let grid = GridSpec::default();
    let mut tagged = true;
    let mut unasserted = true;
    for (j, s) in seeds(seed, 6).into_iter().enumerate() {
        let m = p + (j % 2) as u32;
        let f = criteria::random_member(&params, p + 4, s, ClassTag::R, LOADS[j % LOADS.len()])?;
        let r = psums::verify_partial_sum_bounds(&f, m, &params, &grid, psums::DEFAULT_BOUND_TOL)?;
        tagged &= r.tags.iter().any(|t| t == HYPOTHESES_UNVERIFIED);
        unasserted &= r.checks.iter().all(|c| !c.asserted);
        if j == 0 {
            absorb(&mut report, "sample", r);
        }
    }
    report.push(CheckRecord::flag("every partial-sum report is tagged", tagged));
    report.push(CheckRecord::flag("no partial-sum bound is asserted", unasserted));
    Ok(report)
}

/// Runs criterion `id` (1 to 9) with its own seed.
pub fn run_criterion(id: usize, seed: u64, opts: &CampaignOptions) -> Result<VerificationReport> {
    match id {
        1 => operator_oracle(seed, opts),
        2 => subordination(seed),
        3 => transform_equivalence(seed),
        4 => neighborhood_radii(seed),
        5 => proximity(seed),
        6 => cauchy_euler(seed),
        7 => integral_means(seed),
        8 => partial_sums(seed),
        9 => monotonicity_audit(seed),
        other => Err(Error::Domain(format!("no criterion {other} (expected 1 to 9)"))),
    }
}

/// Criteria 1 to 9 in order; an error inside a criterion becomes a failed record
/// rather than aborting the campaign.
fn run_once(opts: &CampaignOptions) -> Vec<VerificationReport> {
    let criterion_seeds = seeds(opts.seed, 9);
    (1..=9usize)
        .into_par_iter()
        .map(|id| {
            let start = Instant::now();
            let mut report = run_criterion(id, criterion_seeds[id - 1], opts).unwrap_or_else(|e| {
                let mut failed = VerificationReport::new(format!("criterion {id}"));
                failed.push(CheckRecord::flag(format!("completed without error ({e})"), false));
                failed
            });
            report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            report
        })
        .collect()
}

pub fn run_campaign(opts: &CampaignOptions) -> CampaignReport {
    let start = Instant::now();
    let first = run_once(opts);
    let repeat_start = Instant::now();
    let second = run_once(opts);
    let same = first.len() == second.len()
        && first
            .iter()
            .zip(&second)
            .all(|(a, b)| a.without_wall_time() == b.without_wall_time());
    let mut repeat = VerificationReport::new("determinism");
    repeat.push(CheckRecord::flag("second run with the same seed is identical", same));
    repeat.wall_time_ms = repeat_start.elapsed().as_secs_f64() * 1e3;

    let criteria: Vec<CriterionResult> = first
        .into_iter()
        .chain(std::iter::once(repeat))
        .enumerate()
        .map(|(i, report)| CriterionResult {
            id: i + 1,
            title: CRITERIA[i].to_string(),
            passed: report.all_hold(),
            report,
        })
        .collect();

    let mut aggregate = VerificationReport::new("campaign").with_params(opts);
    for c in &criteria {
        aggregate.push(CheckRecord::flag(format!("criterion {}: {}", c.id, c.title), c.passed));
    }
    for c in &criteria {
        absorb(&mut aggregate, &format!("criterion {}", c.id), c.report.clone());
    }
    aggregate.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    CampaignReport { criteria, aggregate }
}

impl VerificationReport {
    /// Pushes the record with the smallest margin, if any.
    fn extend_worst(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        if let Some(r) = worst(records) {
            self.push(r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neighborhoods::radius_hypothesis_violation;

    #[test]
    fn campaign_sets_satisfy_every_hypothesis() {
        for params in campaign_param_sets() {
            let p = params.p();
            for theorem in [
                NeighborhoodTheorem::Thm1,
                NeighborhoodTheorem::Thm2,
                NeighborhoodTheorem::Thm3,
                NeighborhoodTheorem::Thm4,
                NeighborhoodTheorem::Thm5,
            ] {
                assert_eq!(
                    radius_hypothesis_violation(&params, theorem, p + EXTRA_DEGREE),
                    None,
                    "{params:?} {theorem:?}"
                );
            }
            assert!(psums::monotonicity_check(&params, p + EXTRA_DEGREE + 2).unwrap().ok);
            for m in p..=p + 2 {
                assert_eq!(
                    psums::derivative_hypothesis_violation(&params, m, p + EXTRA_DEGREE).unwrap(),
                    None,
                    "{params:?} m = {m}"
                );
            }
            assert!(neighborhoods::rho1(&params, &NeighborhoodRadius::user(0.1).unwrap()).is_ok());
        }
        assert!(!psums::monotonicity_check(&non_monotone_params(), 4).unwrap().ok);
    }

    #[test]
    fn seeds_are_reproducible_and_distinct() {
        assert_eq!(seeds(7, 5), seeds(7, 5));
        assert_ne!(seeds(7, 5), seeds(8, 5));
        assert_eq!(seeds(7, 9)[..5], seeds(7, 5)[..]);
    }

    #[test]
    fn unknown_criteria_are_rejected() {
        assert!(run_criterion(0, 1, &CampaignOptions::default()).is_err());
        assert!(run_criterion(10, 1, &CampaignOptions::default()).is_err());
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [3, 9] {
            let report = run_criterion(id, 11, &CampaignOptions::default()).unwrap();
            assert!(report.all_hold(), "{id}: {:?}", report.first_failure());
        }
    }
}
