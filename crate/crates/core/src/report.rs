//! Versioned JSON report of a sweep.
//!
//! Records carry no timings, so equal configurations give byte-identical
//! documents.

use serde::{Deserialize, Serialize};

use crate::catalog::{DerivationReport, VerificationReport, Verdict};
use crate::mellin::MellinReport;
use crate::sweep::{SweepConfig, PRNG_DESCRIPTION};

pub const SCHEMA_ID: &str = "clausen-report/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RecordDetail {
    Theorem(Box<VerificationReport>),
    Edge(Box<DerivationReport>),
    Mellin(Box<MellinReport>),
}

impl RecordDetail {
    pub fn verdict(&self) -> Verdict {
        match self {
            RecordDetail::Theorem(r) => r.verdict,
            RecordDetail::Mellin(r) => r.verdict,
            RecordDetail::Edge(r) => {
                if r.holds {
                    Verdict::Equal
                } else {
                    Verdict::Mismatch
                }
            }
        }
    }

    /// True when an inapplicable verdict came from an evaluation failure
    /// rather than from the instance.
    pub fn is_evaluation_error(&self) -> bool {
        match self {
            RecordDetail::Theorem(r) => r.verdict == Verdict::Inapplicable && r.invalid_instance != Some(true),
            RecordDetail::Mellin(r) => r.verdict == Verdict::Inapplicable && r.invalid_instance != Some(true),
            RecordDetail::Edge(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub index: u64,
    pub target: String,
    pub trial: u32,
    /// Candidate bindings drawn, including rejected ones.
    pub attempts: u32,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<RecordDetail>,
}

impl Record {
    pub fn new(index: u64, target: String, trial: u32, attempts: u32, detail: Option<RecordDetail>) -> Record {
        let verdict = detail.as_ref().map_or(Verdict::Inapplicable, RecordDetail::verdict);
        Record { index, target, trial, attempts, verdict, detail }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: u64,
    pub equal: u64,
    pub mismatch: u64,
    pub inapplicable: u64,
}

impl Summary {
    pub fn of(records: &[Record]) -> Summary {
        let mut s = Summary { total: records.len() as u64, ..Default::default() };
        for r in records {
            match r.verdict {
                Verdict::Equal => s.equal += 1,
                Verdict::Mismatch => s.mismatch += 1,
                Verdict::Inapplicable => s.inapplicable += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool: ToolInfo,
    pub prng: String,
    pub config: SweepConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl ReportDocument {
    pub fn new(config: SweepConfig, records: Vec<Record>) -> ReportDocument {
        ReportDocument {
            schema: SCHEMA_ID.to_string(),
            tool: ToolInfo { name: "clausen".into(), version: env!("CARGO_PKG_VERSION").into() },
            prng: PRNG_DESCRIPTION.to_string(),
            summary: Summary::of(&records),
            config,
            records,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<ReportDocument> {
        serde_json::from_str(text)
    }

    /// Summary counts agree with the records.
    pub fn is_consistent(&self) -> bool {
        self.summary == Summary::of(&self.records)
    }

    pub fn evaluation_errors(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.detail.as_ref().is_none_or(RecordDetail::is_evaluation_error))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::TheoremId;
    use crate::mellin::MellinCase;
    use crate::sweep::run_sweep;

    #[test]
    fn json_round_trip_is_identity() {
        let cfg = SweepConfig {
            theorems: vec![TheoremId::SaalschutzTrunc, TheoremId::WhippleNt],
            mellin_cases: vec![MellinCase::Numbered(1), MellinCase::Generic],
            edges: false,
            trials: 3,
            seed: 42,
            ..Default::default()
        };
        let records = run_sweep(&cfg, 1);
        let doc = ReportDocument::new(cfg, records);
        let text = doc.to_json();
        let back = ReportDocument::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(back.is_consistent());
    }
}
