//! JSON reports emitted by the command-line driver and the verification
//! suites.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number serialized as `{"re": .., "im": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<CValue> for Complex64 {
    fn from(v: CValue) -> Self {
        Complex64::new(v.re, v.im)
    }
}

/// Outcome of one identity check, `|lhs − rhs| ≤ tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub command: String,
    /// Short identifier of the check within its suite.
    pub check: String,
    pub field: String,
    pub parameters: BTreeMap<String, String>,
    pub lhs: CValue,
    pub rhs: CValue,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: u64,
    /// Named intermediate quantities (e.g. the terms of a limit formula).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub terms: BTreeMap<String, f64>,
    /// Set when the computation itself failed; the report then fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn new(
        command: &str,
        check: &str,
        field: &str,
        parameters: BTreeMap<String, String>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
    ) -> Self {
        let abs_error = (lhs - rhs).norm();
        Self {
            command: command.into(),
            check: check.into(),
            field: field.into(),
            parameters,
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_error,
            tolerance,
            pass: abs_error <= tolerance,
            wall_time_ms: 0,
            terms: BTreeMap::new(),
            error: None,
        }
    }

    /// A failed report for a check whose computation returned an error.
    pub fn failed(
        command: &str,
        check: &str,
        field: &str,
        parameters: BTreeMap<String, String>,
        tolerance: f64,
        error: String,
    ) -> Self {
        Self {
            command: command.into(),
            check: check.into(),
            field: field.into(),
            parameters,
            lhs: CValue { re: 0.0, im: 0.0 },
            rhs: CValue { re: 0.0, im: 0.0 },
            abs_error: f64::MAX,
            tolerance,
            pass: false,
            wall_time_ms: 0,
            terms: BTreeMap::new(),
            error: Some(error),
        }
    }

    pub fn with_terms(mut self, terms: BTreeMap<String, f64>) -> Self {
        self.terms = terms;
        self
    }

    /// One human-readable line.
    pub fn summary_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status}  {:<44} {:<12} err {:.3e} (tol {:.0e})  {} ms",
            self.check, self.field, self.abs_error, self.tolerance, self.wall_time_ms
        );
        if let Some(e) = &self.error {
            line.push_str(&format!("  error: {e}"));
        }
        line
    }
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Formats `s` as `re` or `re+imi`.
pub fn fmt_s(s: Complex64) -> String {
    if s.im == 0.0 {
        format!("{}", s.re)
    } else {
        format!("{}{:+}i", s.re, s.im)
    }
}
