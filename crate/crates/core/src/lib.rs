//! Negative-coefficient p-valent series `f(z) = z^p - sum_{k>p} a_k z^k` on the
//! unit disk, with a Gamma-weighted integral operator acting on them, and
//! numerical verification of what can be proved about them.
//!
//! - [`series`]: truncated series, polynomials, sampling grids.
//! - [`operator`]: the operator in series form and its quadrature oracle.
//! - [`criteria`]: class parameters, coefficient-criterion membership,
//!   subordination residuals, extremal and random members.
//! - [`neighborhoods`]: neighborhood radii, proximity levels, the Cauchy–Euler
//!   construction.
//! - [`means`]: integral means against the extremal comparator.
//! - [`psums`]: partial-sum quotient bounds and their sharpness.
//! - [`campaign`], [`cli`], [`config`], [`report`]: the acceptance campaign, the
//!   `pvalent` command line and its machine-readable reports.
//!
//! Every closed form has an independent counterpart: [`quadrature`] and
//! [`oracles`] hold the routines that share no code with the formulas they check.
//!
//! ```
//! use pvalent::criteria::{is_member_r, ClassParams};
//! use pvalent::neighborhoods::epsilon_thm1;
//! use pvalent::series::TruncatedPSeries;
//!
//! let params = ClassParams::new(1, 0.0, 0.0, 1.0, 1.0, -1.0)?;
//! let f = TruncatedPSeries::new(1, [(2, 0.125)])?;
//! assert!(is_member_r(&f, &params)?.member);
//! assert_eq!(epsilon_thm1(&params).epsilon, 0.5);
//! # Ok::<(), pvalent::error::Error>(())
//! ```

pub mod campaign;
pub mod cli;
pub mod config;
pub mod criteria;
pub mod error;
pub mod means;
pub mod neighborhoods;
pub mod operator;
pub mod oracles;
pub mod psums;
pub mod quadrature;
pub mod report;
pub mod series;
