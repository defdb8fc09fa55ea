//! Serializable pieces shared by the certification and decomposition
//! reports.

use serde::Serialize;

use crate::exact::QuadSurd;

/// An exact value with a decimal preview. The preview is for display only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: String,
}

impl ExactValue {
    pub fn of(x: &QuadSurd, digits: usize) -> Self {
        Self {
            exact: x.pretty(),
            decimal: x.to_decimal(digits),
        }
    }
}

/// A named exact check: the computed value, what it was held against, and
/// the outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub exact: String,
    pub expected: String,
    pub decimal: String,
    /// Four-place preview used in text lines.
    pub preview: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: &str, value: &QuadSurd, expected: impl Into<String>, digits: usize, pass: bool) -> Self {
        Self {
            name: name.to_string(),
            exact: value.pretty(),
            expected: expected.into(),
            decimal: value.to_decimal(digits),
            preview: value.to_decimal(4),
            pass,
        }
    }

    /// Line used by the text renderers: `name = exact ≈ preview PASS`.
    pub fn line(&self) -> String {
        format!(
            "{} = {} ≈ {} {}",
            self.name,
            self.exact,
            self.preview,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}
