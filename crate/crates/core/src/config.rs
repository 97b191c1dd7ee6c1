//! Run configuration: tolerances, the default sampling grid, oracle resolution,
//! seed and output format.
//!
//! A configuration file (JSON, every field optional) can be named through the
//! `PVALENT_CONFIG` environment variable; command-line flags override it.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::DEFAULT_ORACLE_NODES;
use crate::series::GridSpec;

pub const CONFIG_ENV: &str = "PVALENT_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::InvalidParams(vec![format!(
                "format must be json or csv (got {other:?})"
            )])),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Slack in the coefficient criterion.
    pub membership: f64,
    /// Relative refinement error accepted from the quadratures.
    pub quadrature: f64,
    /// Slack when comparing a sampled extremum with a closed-form bound.
    pub bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            membership: 1e-12,
            quadrature: 1e-10,
            bound: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub grid: GridSpec,
    pub oracle_nodes: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            grid: GridSpec::default(),
            oracle_nodes: DEFAULT_ORACLE_NODES,
            seed: 0,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let t = &self.tolerances;
        for (name, v) in [
            ("membership", t.membership),
            ("quadrature", t.quadrature),
            ("bound", t.bound),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                problems.push(format!("{name} tolerance must be positive (got {v})"));
            }
        }
        if let Err(Error::InvalidParams(grid_problems)) = self.grid.validate() {
            problems.extend(grid_problems.into_iter().map(|p| format!("grid: {p}")));
        }
        if self.oracle_nodes < 64 || !self.oracle_nodes.is_multiple_of(2) {
            problems.push(format!(
                "oracle_nodes must be even and at least 64 (got {})",
                self.oracle_nodes
            ));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(problems))
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let config: Self = read_json(path)?;
        config.validate()?;
        Ok(config)
    }

    /// The file named by `PVALENT_CONFIG`, or the defaults when it is unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::default()),
        }
    }
}

/// Reads and deserializes a JSON file, folding I/O and schema errors into [`Error`].
pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let io = |message: String| Error::Io {
        path: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| io(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| io(e.to_string()))
}
