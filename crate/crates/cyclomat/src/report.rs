//! Structured pass/fail records for identity checks.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// Outcome of one verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Which value backend produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Numeric,
    Both,
}

/// A reproducible record of one identity check: the claim, the parameters
/// that pin it down, both sides' rendered values, and the verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub parameters: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub backend: Backend,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Incremental builder used by the verifiers.
pub struct ReportBuilder {
    claim_id: String,
    parameters: BTreeMap<String, String>,
    backend: Backend,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(claim_id: impl Into<String>, backend: Backend) -> Self {
        ReportBuilder {
            claim_id: claim_id.into(),
            parameters: BTreeMap::new(),
            backend,
            started: Instant::now(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    /// Finishes with pass/fail according to `ok`.
    pub fn finish(self, ok: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> VerificationReport {
        let status = if ok { Status::Pass } else { Status::Fail };
        VerificationReport {
            claim_id: self.claim_id,
            parameters: self.parameters,
            lhs: lhs.into(),
            rhs: rhs.into(),
            status,
            reason: None,
            backend: self.backend,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// Finishes as skipped (inapplicable parameters, not a failure).
    pub fn skip(self, reason: impl Into<String>) -> VerificationReport {
        VerificationReport {
            claim_id: self.claim_id,
            parameters: self.parameters,
            lhs: String::new(),
            rhs: String::new(),
            status: Status::Skipped,
            reason: Some(reason.into()),
            backend: self.backend,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_through_json() {
        let r = ReportBuilder::new("thm1.i", Backend::Both)
            .param("q", 7)
            .param("r", 1)
            .finish(true, "6", "6");
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.claim_id, "thm1.i");
        assert_eq!(back.status, Status::Pass);
        assert!(json.contains("\"status\":\"pass\""));
        assert!(!json.contains("reason"));
    }

    #[test]
    fn skip_carries_a_reason() {
        let r = ReportBuilder::new("thm2", Backend::Exact).skip("q % 8 != 5");
        assert_eq!(r.status, Status::Skipped);
        assert_eq!(r.reason.as_deref(), Some("q % 8 != 5"));
    }
}
