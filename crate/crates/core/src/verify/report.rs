use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// First order at which two exact series disagree.
    Order { order: usize, detail: String },
    /// A numeric quantity above its limit.
    Residual { value: f64, limit: f64, detail: String },
    Message { detail: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Order { order, detail } => write!(f, "order {order}: {detail}"),
            Witness::Residual { value, limit, detail } => write!(f, "{detail}: {value:e} > {limit:e}"),
            Witness::Message { detail } => f.write_str(detail),
        }
    }
}

/// Outcome of one check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            parameters: BTreeMap::new(),
            status: CheckStatus::Pass,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records a failure; the first witness is kept.
    pub fn fail(&mut self, witness: Witness) {
        self.status = CheckStatus::Fail;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Fails at the first order where `got` and `want` differ.
    pub fn expect_equal(&mut self, what: &str, got: &TruncatedSeries, want: &TruncatedSeries) {
        if let Some(k) = got.first_difference(want) {
            let detail = format!(
                "{what}: got {} expected {}",
                got.coeff(k).map(ToString::to_string).unwrap_or_default(),
                want.coeff(k).map(ToString::to_string).unwrap_or_default()
            );
            self.fail(Witness::Order { order: k, detail });
        }
    }

    /// Fails at the first nonzero coefficient of `s`.
    pub fn expect_zero(&mut self, what: &str, s: &TruncatedSeries) {
        if let Some(k) = s.first_nonzero() {
            let detail = format!("{what} has coefficient {}", s.coeffs()[k]);
            self.fail(Witness::Order { order: k, detail });
        }
    }

    pub fn expect_at_most(&mut self, what: &str, value: f64, limit: f64) {
        if value.is_nan() || value > limit {
            self.fail(Witness::Residual { value, limit, detail: what.to_string() });
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
        };
        write!(f, "{status} {}", self.name)?;
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " [{}]", params.join(" "))?;
        }
        if let Some(w) = &self.witness {
            write!(f, " -- {w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_keeps_first_witness() {
        let mut r = CheckReport::new("demo").param("n", 3);
        assert!(r.passed());
        r.expect_at_most("residual", 2.0, 1.0);
        r.expect_at_most("other", 5.0, 1.0);
        assert!(!r.passed());
        assert!(matches!(&r.witness, Some(Witness::Residual { detail, .. }) if detail == "residual"));
        assert_eq!(r.to_string(), "FAIL demo [n=3] -- residual: 2e0 > 1e0");
    }

    #[test]
    fn nan_is_a_failure() {
        let mut r = CheckReport::new("nan");
        r.expect_at_most("value", f64::NAN, 1.0);
        assert!(!r.passed());
    }

    #[test]
    fn json_roundtrip() {
        let mut r = CheckReport::new("x").param("K", 40);
        r.fail(Witness::Order { order: 7, detail: "bad".into() });
        r.note("extra");
        let s = serde_json::to_string(&r).unwrap();
        let back: CheckReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
