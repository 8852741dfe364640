//! Verification reports: the uniform result record produced by every check
//! in the crate, serializable in the `report-v1` JSON layout.

use std::fmt;
use std::time::Duration;

use serde_json::{json, Value};

use crate::series::{Comparison, HalfExp, Mismatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one verification: which check ran, to what order, whether the
/// two sides agreed, and if not, where they first differ.
///
/// A pass is always a statement about truncated series — the attached note
/// says so explicitly and is included in every serialized report.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub order: HalfExp,
    /// Family parameter k, where applicable.
    pub k: Option<u32>,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    /// Index n of the first failing sequence element, for per-n checks
    /// (Bailey pair and conjugate-pair defining relations).
    pub failing_index: Option<u32>,
    pub elapsed: Duration,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    /// Message detail for `Status::Error`.
    pub error: Option<String>,
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, order: HalfExp) -> Self {
        VerificationReport {
            id: id.into(),
            order,
            k: None,
            status: Status::Pass,
            first_mismatch: None,
            failing_index: None,
            elapsed: Duration::ZERO,
            lhs_terms: 0,
            rhs_terms: 0,
            error: None,
        }
    }

    pub fn with_comparison(mut self, cmp: Comparison) -> Self {
        match cmp {
            Comparison::Equal => self.status = Status::Pass,
            Comparison::Mismatch(m) => {
                self.status = Status::Fail;
                self.first_mismatch = Some(m);
            }
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The honest-labeling line attached to every report.
    pub fn note(&self) -> String {
        format!(
            "verified to order {} (truncated-series equality), not a proof",
            self.order
        )
    }

    /// Serializes in the `report-v1` layout. Keys are emitted in sorted
    /// order, so payloads are deterministic modulo `elapsed_ms`.
    pub fn to_json(&self) -> Value {
        let mismatch = self.first_mismatch.as_ref().map(|m| {
            json!({
                "q_exp": m.q_exp.to_string(),
                "z_exp": m.z_exp,
                "lhs": m.lhs.to_string(),
                "rhs": m.rhs.to_string(),
            })
        });
        json!({
            "id": self.id,
            "order": self.order.to_string(),
            "params": self.k.map(|k| json!({ "k": k })),
            "status": self.status.as_str(),
            "first_mismatch": mismatch,
            "failing_index": self.failing_index,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "note": self.note(),
            "error": self.error,
        })
    }

    /// One human-readable line per check.
    pub fn text_line(&self) -> String {
        let k = match self.k {
            Some(k) => format!(" [k={k}]"),
            None => String::new(),
        };
        let detail = match (&self.status, &self.first_mismatch, &self.error) {
            (Status::Fail, Some(m), _) => {
                let at_n = self
                    .failing_index
                    .map(|n| format!(" (sequence index n={n})"))
                    .unwrap_or_default();
                format!(
                    " first mismatch at q^{} z^{}: lhs={} rhs={}{}",
                    m.q_exp, m.z_exp, m.lhs, m.rhs, at_n
                )
            }
            (Status::Error, _, Some(e)) => format!(" {e}"),
            _ => String::new(),
        };
        format!(
            "{status:<5} {id}{k} order={order} terms={lt}/{rt} {ms:.1} ms —{detail} {note}",
            status = self.status,
            id = self.id,
            order = self.order,
            lt = self.lhs_terms,
            rt = self.rhs_terms,
            ms = self.elapsed.as_secs_f64() * 1e3,
            note = self.note(),
            detail = detail,
        )
    }
}
