//! The `pvalent` command line: argument parsing, configuration layering, file
//! loading and report output.
//!
//! Exit codes: 0 when every check holds, 1 when a check is violated (or a
//! quadrature fails to converge), 2 on input or validation errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::campaign::{self, CampaignOptions};
use crate::config::{read_json, OutputFormat, RunConfig};
use crate::criteria::{self, ClassParams, ClassTag};
use crate::error::{Error, Result};
use crate::means::{self, MeansTolerance, DEFAULT_RADII, DEFAULT_TAUS};
use crate::neighborhoods::{self, CauchyEulerParam, InclusionOptions, NeighborhoodRadius, NeighborhoodTheorem};
use crate::operator::{self, OperatorParams};
use crate::psums;
use crate::report::{CheckRecord, VerificationReport};
use crate::series::{Analytic, TruncatedPSeries};

const SERIES_SCHEMA: &str =
    r#"series files look like {"p": 1, "tail": [{"k": 2, "a": 0.1}]} with k > p ascending and a >= 0"#;
const PARAMS_SCHEMA: &str = r#"parameter files look like {"p": 1, "alpha": 0, "mu": 0, "delta": 1, "A": 1, "B": -1}"#;

#[derive(Debug, Parser)]
#[command(
    name = "pvalent",
    version,
    about = "Verify coefficient criteria, neighborhoods, integral means and partial sums of p-valent series"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Overrides layered on top of the `PVALENT_CONFIG` file.
#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_parser = ["json", "csv"])]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON GridSpec: {"radii": [...], "angular_nodes": N}.
    #[arg(long, global = true)]
    pub grid: Option<PathBuf>,
    #[arg(long, global = true)]
    pub oracle_nodes: Option<usize>,
    #[arg(long, global = true)]
    pub tolerance_membership: Option<f64>,
    #[arg(long, global = true)]
    pub tolerance_quadrature: Option<f64>,
    #[arg(long, global = true)]
    pub tolerance_bound: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient-criterion membership of a series.
    Member {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "R")]
        class: ClassTag,
    },
    /// Apply the operator to a series and compare with the integral oracle.
    Operator {
        #[arg(long)]
        f: PathBuf,
        /// Class parameters supplying mu and delta.
        #[arg(long, conflicts_with_all = ["mu", "delta"])]
        params: Option<PathBuf>,
        #[arg(long, requires = "delta")]
        mu: Option<f64>,
        #[arg(long, requires = "mu")]
        delta: Option<f64>,
        /// Evaluation point "re,im"; repeatable.
        #[arg(long, value_parser = parse_complex)]
        z: Vec<Complex64>,
    },
    #[command(subcommand)]
    Neigh(NeighCommand),
    #[command(subcommand)]
    Means(MeansCommand),
    #[command(subcommand)]
    Psums(PsumsCommand),
    /// Run the full acceptance campaign.
    Campaign,
}

#[derive(Debug, Subcommand)]
pub enum NeighCommand {
    /// Closed-form neighborhood radius (theorem 1, 2 or 5).
    Epsilon {
        #[arg(long)]
        theorem: u32,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long)]
        thm2_as_stated: bool,
    },
    /// Proximity level for a neighborhood radius (theorem 3 or 4).
    Rho {
        #[arg(long)]
        theorem: u32,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Monte-Carlo check of a neighborhood theorem.
    Check {
        #[arg(long)]
        theorem: u32,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long)]
        thm2_as_stated: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeansCommand {
    /// Compare integral means of a member with the comparator on a (tau, r) matrix.
    Verify {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        params: PathBuf,
        #[arg(long, value_delimiter = ',')]
        tau: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
    },
    /// CSV samples (theta, |f(r e^{i theta})|).
    Curve {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 360)]
        nodes: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PsumsCommand {
    /// The four closed-form lower bounds at cut m.
    Bounds {
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        m: u32,
    },
    /// Scan the four ratios of a member over the grid.
    Verify {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        m: u32,
    },
    /// Re(f/f_m) of the extremal function along the positive axis.
    Sharpness {
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        m: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [0.9, 0.99, 0.999])]
        radii: Vec<f64>,
    },
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts[..] {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected \"re\" or \"re,im\" (got {s:?})")),
    }
}

pub fn load_function(path: &Path) -> Result<TruncatedPSeries> {
    read_json(path)
}

pub fn load_params(path: &Path) -> Result<ClassParams> {
    read_json(path)
}

fn params_or_worked(path: &Option<PathBuf>) -> Result<ClassParams> {
    path.as_deref()
        .map_or_else(|| Ok(campaign::worked_params()), load_params)
}

impl GlobalArgs {
    /// The environment's configuration with every given flag applied on top.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut config = RunConfig::from_env()?;
        if let Some(f) = &self.format {
            config.format = f.parse()?;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(path) = &self.grid {
            config.grid = read_json(path)?;
        }
        if let Some(n) = self.oracle_nodes {
            config.oracle_nodes = n;
        }
        let t = &mut config.tolerances;
        t.membership = self.tolerance_membership.unwrap_or(t.membership);
        t.quadrature = self.tolerance_quadrature.unwrap_or(t.quadrature);
        t.bound = self.tolerance_bound.unwrap_or(t.bound);
        config.validate()?;
        Ok(config)
    }
}

/// What a command produced: a JSON document, its CSV rendering, and whether
/// every check held.
struct Outcome {
    json: serde_json::Value,
    csv: String,
    ok: bool,
}

impl Outcome {
    fn report(report: VerificationReport) -> Self {
        Self {
            csv: report.to_csv(),
            ok: report.all_hold(),
            json: to_json(&report),
        }
    }

    fn value<T: Serialize>(value: &T, csv: String) -> Self {
        Self {
            json: to_json(value),
            csv,
            ok: true,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("outputs serialize to JSON")
}

fn member(config: &RunConfig, f: &Path, params: &Path, class: ClassTag) -> Result<Outcome> {
    let f = load_function(f)?;
    let params = load_params(params)?;
    let verdict = criteria::membership(&f, &params, class, config.tolerances.membership)?;
    let mut report = VerificationReport::new(format!("member {class:?}")).with_params(&params);
    let mut record = CheckRecord::at_most(
        "criterion sum",
        verdict.lhs,
        verdict.rhs,
        config.tolerances.membership * verdict.rhs,
    );
    // keep the verdict's own decision so the CLI cannot drift from the library
    record.holds = verdict.member;
    report.push(record);
    Ok(Outcome::report(report))
}

fn operator_cmd(
    config: &RunConfig,
    f: &Path,
    params: &Option<PathBuf>,
    mu: Option<f64>,
    delta: Option<f64>,
    z: &[Complex64],
) -> Result<Outcome> {
    let f = load_function(f)?;
    let op = match (params, mu, delta) {
        (Some(path), _, _) => load_params(path)?.operator(),
        (None, Some(mu), Some(delta)) => OperatorParams::new(mu, delta)?,
        _ => {
            return Err(Error::InvalidParams(vec![
                "give either --params or both --mu and --delta".into(),
            ]))
        }
    };
    let image = operator::apply_rafid_series(&f, op);
    let points = if z.is_empty() {
        vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.3, 0.5),
            Complex64::new(0.0, -0.7),
        ]
    } else {
        z.to_vec()
    };
    let mut report = VerificationReport::new("operator").with_params(&serde_json::json!({
        "mu": op.mu(), "delta": op.delta(), "image": image,
    }));
    if op.delta() < operator::ORACLE_MIN_DELTA {
        report.tag(format!("integral oracle needs delta >= {}", operator::ORACLE_MIN_DELTA));
        return Ok(Outcome::report(report));
    }
    for z in points {
        let series = image.evaluate(z);
        let oracle = operator::rafid_integral_oracle(&f, op, z, config.oracle_nodes)?;
        report.push(
            CheckRecord::at_most(
                "relative oracle discrepancy",
                (oracle - series).norm() / (1.0 + series.norm()),
                campaign::OPERATOR_TOL,
                0.0,
            )
            .with_witness(z),
        );
    }
    Ok(Outcome::report(report))
}

fn neigh(config: &RunConfig, cmd: &NeighCommand) -> Result<Outcome> {
    match cmd {
        NeighCommand::Epsilon {
            theorem,
            params,
            phi,
            thm2_as_stated,
        } => {
            let params = params_or_worked(params)?;
            let eps = match (theorem, thm2_as_stated) {
                (1, _) => neighborhoods::epsilon_thm1(&params),
                (2, false) => neighborhoods::epsilon_thm2(&params),
                (2, true) => neighborhoods::epsilon_thm2_as_stated(&params),
                (5, _) => neighborhoods::epsilon_thm5(&params, CauchyEulerParam::new(*phi, params.p())?)?,
                (other, _) => {
                    return Err(Error::Domain(format!(
                        "neigh epsilon takes theorem 1, 2 or 5 (got {other})"
                    )))
                }
            };
            Ok(Outcome::value(
                &eps,
                format!("epsilon,source\n{},{:?}\n", eps.epsilon, eps.source),
            ))
        }
        NeighCommand::Rho { theorem, eps, params } => {
            let params = params_or_worked(params)?;
            let radius = NeighborhoodRadius::user(*eps)?;
            let level = match theorem {
                3 => neighborhoods::rho1(&params, &radius)?,
                4 => neighborhoods::rho2(&params, &radius)?,
                other => return Err(Error::Domain(format!("neigh rho takes theorem 3 or 4 (got {other})"))),
            };
            Ok(Outcome::value(
                &level,
                format!("rho,source\n{},{:?}\n", level.rho, level.source),
            ))
        }
        NeighCommand::Check {
            theorem,
            samples,
            params,
            eps,
            phi,
            thm2_as_stated,
        } => {
            let params = params_or_worked(params)?;
            let theorem = NeighborhoodTheorem::try_from(*theorem)?;
            let defaults = InclusionOptions::default();
            let opts = InclusionOptions {
                phi: *phi,
                eps: *eps,
                thm2_as_stated: *thm2_as_stated,
                coefficient_tol: config.tolerances.membership,
                proximity_tol: config.tolerances.bound,
                ..defaults
            };
            Ok(Outcome::report(neighborhoods::inclusion_check(
                theorem,
                &params,
                *samples,
                config.seed,
                &opts,
            )?))
        }
    }
}

fn means_cmd(config: &RunConfig, cmd: &MeansCommand) -> Result<Outcome> {
    match cmd {
        MeansCommand::Verify {
            f,
            params,
            tau,
            r,
            nodes,
        } => {
            let f = load_function(f)?;
            let params = load_params(params)?;
            let taus = if tau.is_empty() {
                DEFAULT_TAUS.to_vec()
            } else {
                tau.clone()
            };
            let radii = if r.is_empty() {
                DEFAULT_RADII.to_vec()
            } else {
                r.clone()
            };
            let tol = MeansTolerance {
                refinement: config.tolerances.quadrature,
                holds: config.tolerances.quadrature,
                ..MeansTolerance::default()
            };
            let cells = means::verify_matrix(&f, &params, &taus, &radii, *nodes, &tol)?;
            let mut csv = String::from("r,tau,lhs,rhs,holds,refinement_error\n");
            for c in &cells {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.r, c.tau, c.lhs, c.rhs, c.holds, c.refinement_error
                ));
            }
            Ok(Outcome {
                ok: cells.iter().all(|c| c.holds),
                json: to_json(&cells),
                csv,
            })
        }
        MeansCommand::Curve { f, r, nodes } => {
            let f = load_function(f)?;
            if !(*r > 0.0 && *r < 1.0) || *nodes == 0 {
                return Err(Error::InvalidParams(vec![format!(
                    "curve needs r in (0, 1) and nodes > 0 (got r = {r}, nodes = {nodes})"
                )]));
            }
            let points = means::curve(&f, *r, *nodes);
            let mut csv = String::from("theta,abs\n");
            for (theta, v) in &points {
                csv.push_str(&format!("{theta},{v}\n"));
            }
            Ok(Outcome::value(&points, csv))
        }
    }
}

fn psums_cmd(config: &RunConfig, cmd: &PsumsCommand) -> Result<Outcome> {
    match cmd {
        PsumsCommand::Bounds { params, m } => {
            let b = psums::bounds(*m, &params_or_worked(params)?)?;
            let csv = format!(
                "m,c_next,b_ratio,b_inv,b_dratio,b_dinv,monotone_ok\n{},{},{},{},{},{},{}\n",
                b.m, b.c_next, b.b_ratio, b.b_inv, b.b_dratio, b.b_dinv, b.monotone_ok
            );
            Ok(Outcome::value(&b, csv))
        }
        PsumsCommand::Verify { f, params, m } => {
            let f = load_function(f)?;
            let params = params_or_worked(params)?;
            Ok(Outcome::report(psums::verify_partial_sum_bounds(
                &f,
                *m,
                &params,
                &config.grid,
                config.tolerances.bound,
            )?))
        }
        PsumsCommand::Sharpness { params, m, radii } => {
            let probe = psums::sharpness_probe(*m, &params_or_worked(params)?, radii)?;
            let mut csv = String::from("r,ratio\n");
            for (r, v) in &probe {
                csv.push_str(&format!("{r},{v}\n"));
            }
            Ok(Outcome::value(&probe, csv))
        }
    }
}

fn dispatch(config: &RunConfig, command: &Command) -> Result<Outcome> {
    match command {
        Command::Member { f, params, class } => member(config, f, params, *class),
        Command::Operator {
            f,
            params,
            mu,
            delta,
            z,
        } => operator_cmd(config, f, params, *mu, *delta, z),
        Command::Neigh(cmd) => neigh(config, cmd),
        Command::Means(cmd) => means_cmd(config, cmd),
        Command::Psums(cmd) => psums_cmd(config, cmd),
        Command::Campaign => {
            let report = campaign::run_campaign(&CampaignOptions {
                seed: config.seed,
                oracle_nodes: config.oracle_nodes,
            });
            Ok(Outcome::report(report.aggregate))
        }
    }
}

fn schema_hint(e: &Error) -> Option<&'static str> {
    match e {
        Error::InvalidSeries(_) => Some(SERIES_SCHEMA),
        Error::InvalidParams(_) => Some(PARAMS_SCHEMA),
        Error::Io { message, .. } if message.contains("series") || message.contains("tail") => Some(SERIES_SCHEMA),
        Error::Io { message, .. } if message.contains("parameter") || message.contains("alpha") => Some(PARAMS_SCHEMA),
        _ => None,
    }
}

/// Parses `argv` (program name first), runs the command and writes its output.
/// Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = cli
        .global
        .resolve()
        .and_then(|config| Ok((dispatch(&config, &cli.command)?, config.format)));
    match result {
        Ok((outcome, format)) => {
            let written = match format {
                OutputFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("JSON values serialize")
                ),
                OutputFormat::Csv => write!(out, "{}", outcome.csv),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Some(hint) = schema_hint(&e) {
                let _ = writeln!(err, "hint: {hint}");
            }
            match e {
                Error::QuadratureNotConverged { .. } => 1,
                _ => 2,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("pvalent").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn complex_points_parse() {
        assert_eq!(parse_complex("0.3,-0.5").unwrap(), Complex64::new(0.3, -0.5));
        assert_eq!(parse_complex("0.25").unwrap(), Complex64::new(0.25, 0.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn closed_forms_print_library_values() {
        let (code, out, _) = run_args(&["neigh", "epsilon", "--theorem", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(
            v["epsilon"].as_f64().unwrap(),
            neighborhoods::epsilon_thm1(&campaign::worked_params()).epsilon
        );
        let (code, out, _) = run_args(&["neigh", "rho", "--theorem", "3", "--eps", "0.1", "--format", "csv"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("rho,source\n0.933333333333333"), "{out}");
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_args(&["neigh", "epsilon", "--theorem", "4"]);
        assert_eq!(code, 2);
        assert!(err.contains("theorem 1, 2 or 5"));
        let (code, _, err) = run_args(&["bogus"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("campaign"));
    }
}
