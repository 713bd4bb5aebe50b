use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// How `observed` is judged against `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `|observed - expected| <= tolerance`.
    Equal,
    /// `observed <= expected`.
    AtMost,
    /// `observed >= expected`.
    AtLeast,
}

/// Outcome of one numerical check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: BTreeMap<String, f64>,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub kind: CheckKind,
    pub passed: bool,
    /// Wall time; left out of reports unless explicitly requested so that
    /// reports are reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl VerificationReport {
    fn new(name: &str, kind: CheckKind, observed: f64, expected: f64, tolerance: f64) -> Self {
        let passed = match kind {
            CheckKind::Equal => (observed - expected).abs() <= tolerance,
            CheckKind::AtMost => observed <= expected,
            CheckKind::AtLeast => observed >= expected,
        };
        Self {
            check_name: name.to_string(),
            parameters: BTreeMap::new(),
            observed,
            expected,
            tolerance,
            kind,
            passed,
            runtime_ms: None,
        }
    }

    pub fn equal(name: &str, observed: f64, expected: f64, tolerance: f64) -> Self {
        Self::new(name, CheckKind::Equal, observed, expected, tolerance)
    }

    pub fn at_most(name: &str, observed: f64, bound: f64) -> Self {
        Self::new(name, CheckKind::AtMost, observed, bound, 0.0)
    }

    pub fn at_least(name: &str, observed: f64, bound: f64) -> Self {
        Self::new(name, CheckKind::AtLeast, observed, bound, 0.0)
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_rules() {
        assert!(VerificationReport::equal("a", 1.0 + 1e-12, 1.0, 1e-10).passed);
        assert!(!VerificationReport::equal("a", 1.1, 1.0, 1e-10).passed);
        assert!(!VerificationReport::equal("a", f64::NAN, 0.0, 1.0).passed);
        assert!(VerificationReport::at_most("b", 2.0, 2.0).passed);
        assert!(!VerificationReport::at_most("b", 2.5, 2.0).passed);
        assert!(VerificationReport::at_least("c", 150.0, 100.0).passed);
        assert!(!VerificationReport::at_least("c", f64::NAN, 100.0).passed);
    }

    #[test]
    fn json_shape() {
        let r = VerificationReport::equal("parseval", 1e-15, 0.0, 1e-10).param("n", 256.0);
        let json = to_json(std::slice::from_ref(&r));
        assert!(json.contains("\"check_name\": \"parseval\""));
        assert!(json.contains("\"kind\": \"equal\""));
        assert!(!json.contains("runtime_ms"));
        let back: Vec<VerificationReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![r]);
    }
}
