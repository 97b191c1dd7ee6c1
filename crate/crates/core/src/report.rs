//! Machine-readable verification reports.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One checked inequality.
///
/// `margin` is signed so that a nonnegative margin always means the inequality
/// holds; `holds` is `margin >= -tolerance`. Records with `asserted == false` are
/// informational (for instance when a theorem's hypotheses were not verified) and
/// never fail a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub computed: f64,
    pub bound: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
    pub asserted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Complex64>,
}

impl CheckRecord {
    fn new(name: impl Into<String>, computed: f64, bound: f64, margin: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            computed,
            bound,
            margin,
            tolerance,
            holds: margin >= -tolerance,
            asserted: true,
            witness: None,
        }
    }

    /// `computed <= bound` within `tolerance`.
    pub fn at_most(name: impl Into<String>, computed: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, computed, bound, bound - computed, tolerance)
    }

    /// `computed >= bound` within `tolerance`.
    pub fn at_least(name: impl Into<String>, computed: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, computed, bound, computed - bound, tolerance)
    }

    /// `|computed - bound| <= tolerance`.
    pub fn close_to(name: impl Into<String>, computed: f64, bound: f64, tolerance: f64) -> Self {
        Self::new(name, computed, bound, -(computed - bound).abs(), tolerance)
    }

    /// A pass/fail flag as a record: computed 1 or 0 against bound 1.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { 1.0 } else { 0.0 }, 1.0, if ok { 0.0 } else { -1.0 }, 0.0)
    }

    pub fn with_witness(mut self, z: Complex64) -> Self {
        self.witness = Some(z);
        self
    }

    pub fn informational(mut self) -> Self {
        self.asserted = false;
        self
    }

    pub fn failed(&self) -> bool {
        self.asserted && !self.holds
    }
}

/// Tag attached when a check ran but the theorem's hypotheses could not be confirmed.
pub const HYPOTHESES_UNVERIFIED: &str = "hypotheses unverified";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    #[serde(default)]
    pub params: serde_json::Value,
    pub checks: Vec<CheckRecord>,
    /// Grid samples dropped because a denominator vanished there.
    pub discarded: usize,
    #[serde(default)]
    pub tags: Vec<String>,
    /// The only nondeterministic field.
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            params: serde_json::Value::Null,
            checks: Vec::new(),
            discarded: 0,
            tags: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    pub fn with_params<T: Serialize>(mut self, params: &T) -> Self {
        self.params = serde_json::to_value(params).expect("parameters serialize to JSON");
        self
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.checks.push(check);
    }

    pub fn tag(&mut self, tag: impl Into<String>) {
        let tag = tag.into();
        if !self.tags.contains(&tag) {
            self.tags.push(tag);
        }
    }

    /// True when no asserted check failed.
    pub fn all_hold(&self) -> bool {
        !self.checks.iter().any(CheckRecord::failed)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.failed())
    }

    /// Copy with the wall-time zeroed, for determinism comparisons.
    pub fn without_wall_time(&self) -> Self {
        Self {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }

    /// CSV rendering of the check records, one row per check.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("command,name,computed,bound,margin,tolerance,holds,asserted,witness_re,witness_im\n");
        for c in &self.checks {
            let (wr, wi) = c
                .witness
                .map(|w| (w.re.to_string(), w.im.to_string()))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                self.command, c.name, c.computed, c.bound, c.margin, c.tolerance, c.holds, c.asserted, wr, wi
            ));
        }
        out
    }
}
