//! Verification reports as JSON lines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// The outcome for one `(suite, system, z)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZRecord {
    pub suite: String,
    pub system: String,
    pub z: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
    /// Set sizes, class sizes and other tallies.
    #[serde(default)]
    pub counts: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    pub pass: bool,
    /// What went wrong, naming the offending word when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl ZRecord {
    pub fn new(suite: &str, system: &str, z: impl Into<String>) -> Self {
        ZRecord {
            suite: suite.to_string(),
            system: system.to_string(),
            z: z.into(),
            pass: true,
            ..Default::default()
        }
    }

    pub fn count(&mut self, key: &str, value: impl TryInto<u64>) {
        self.counts.insert(key.to_string(), value.try_into().unwrap_or(u64::MAX));
    }

    pub fn flag(&mut self, key: &str, value: bool) {
        self.flags.insert(key.to_string(), value);
    }

    /// Marks the record failed, keeping the first message.
    pub fn fail(&mut self, message: impl Into<String>) {
        if self.pass {
            self.failure = Some(message.into());
        }
        self.pass = false;
    }

    /// Fails with `message` unless `ok`.
    pub fn require(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(message());
        }
    }
}

/// Trailing line of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub system: String,
    pub records: usize,
    pub failures: usize,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
    pub wall_time_ms: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Line {
    Z(ZRecord),
    Summary(Summary),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub system: String,
    pub records: Vec<ZRecord>,
    /// The component removed in fault-injection mode.
    pub fault: Option<String>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    /// Passes when there is at least one record and every record passes.
    pub fn pass(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ZRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn summary(&self) -> Summary {
        Summary {
            suite: self.suite.clone(),
            system: self.system.clone(),
            records: self.records.len(),
            failures: self.failures().count(),
            pass: self.pass(),
            fault: self.fault.clone(),
            wall_time_ms: self.wall_time_ms,
        }
    }

    /// One line per record followed by the summary line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(&Line::Z(r.clone())).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&Line::Summary(self.summary())).expect("summaries serialize"));
        out.push('\n');
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        let mut summary = None;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let parsed: Line = serde_json::from_str(line)
                .map_err(|e| HarnessError::Usage(format!("report line {}: {e}", i + 1)))?;
            match parsed {
                Line::Z(r) => records.push(r),
                Line::Summary(s) => summary = Some(s),
            }
        }
        let s = summary.ok_or_else(|| HarnessError::Usage("report has no summary line".into()))?;
        Ok(VerificationReport {
            suite: s.suite,
            system: s.system,
            records,
            fault: s.fault,
            wall_time_ms: s.wall_time_ms,
        })
    }

    /// Human-readable digest: the summary and any failing records.
    pub fn to_text(&self) -> String {
        let s = self.summary();
        let mut out = format!(
            "{} {} on {}: {} records, {} failing, {} ms",
            if s.pass { "PASS" } else { "FAIL" },
            s.suite,
            s.system,
            s.records,
            s.failures,
            s.wall_time_ms
        );
        if let Some(f) = &s.fault {
            out.push_str(&format!(" (fault: dropped {f})"));
        }
        out.push('\n');
        for r in self.failures() {
            out.push_str(&format!("  z = {}: {}\n", r.z, r.failure.as_deref().unwrap_or("failed")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut a = ZRecord::new("hh", "A2", "[3,2,1]");
        a.rho = Some(2);
        a.count("words", 2usize);
        a.flag("spans", true);
        let mut b = ZRecord::new("hh", "A2", "[1,2,3]");
        b.fail("closure {} misses 12");
        let report = VerificationReport {
            suite: "hh".into(),
            system: "A2".into(),
            records: vec![a, b],
            fault: Some("braid 12".into()),
            wall_time_ms: 5,
        };
        let text = report.to_json_lines();
        assert_eq!(text.lines().count(), 3);
        assert_eq!(VerificationReport::from_json_lines(&text).unwrap(), report);
        assert!(!report.pass());
        assert!(report.to_text().starts_with("FAIL hh on A2"));
    }

    #[test]
    fn empty_report_fails() {
        let r = VerificationReport {
            suite: "x".into(),
            system: "y".into(),
            records: vec![],
            fault: None,
            wall_time_ms: 0,
        };
        assert!(!r.pass());
        assert!(VerificationReport::from_json_lines("").is_err());
    }
}
