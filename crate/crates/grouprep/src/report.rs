//! Check records and reports: human-readable text plus line-delimited
//! structured records, with canonical ordering for reproducible output.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// expected value is an identity stated by the theory
    Identity,
    /// expected value computed by an independent oracle
    Derived,
    /// immediate consequence of definitions
    Trivial,
    /// harness machinery, no external anchor
    Plumbing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    /// measured residual, constant, or relative eigenvalue
    pub value: f64,
    /// pass boundary for `value` (meaning depends on `direction`)
    pub tolerance: f64,
    /// "<=" when small values pass, ">" when large values pass
    pub direction: String,
    pub status: CheckStatus,
    pub provenance: Provenance,
    /// which identity or construction anchors the expected value
    pub anchor: String,
    /// grid and parameter metadata
    pub details: String,
}

impl CheckRecord {
    pub fn residual(
        suite: &str,
        check: &str,
        value: f64,
        tolerance: f64,
        provenance: Provenance,
        anchor: &str,
        details: &str,
    ) -> CheckRecord {
        CheckRecord {
            suite: suite.into(),
            check: check.into(),
            value,
            tolerance,
            direction: "<=".into(),
            status: if value <= tolerance { CheckStatus::Pass } else { CheckStatus::Fail },
            provenance,
            anchor: anchor.into(),
            details: details.into(),
        }
    }

    pub fn lower_bound(
        suite: &str,
        check: &str,
        value: f64,
        bound: f64,
        provenance: Provenance,
        anchor: &str,
        details: &str,
    ) -> CheckRecord {
        CheckRecord {
            suite: suite.into(),
            check: check.into(),
            value,
            tolerance: bound,
            direction: ">".into(),
            status: if value > bound { CheckStatus::Pass } else { CheckStatus::Fail },
            provenance,
            anchor: anchor.into(),
            details: details.into(),
        }
    }

    pub fn with_status(mut self, status: CheckStatus) -> CheckRecord {
        self.status = status;
        self
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Report {
        Report { records: Vec::new() }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn merge(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Canonical order: suite name, then check name.
    pub fn sort(&mut self) {
        self.records
            .sort_by(|a, b| (a.suite.as_str(), a.check.as_str()).cmp(&(b.suite.as_str(), b.check.as_str())));
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut n = (0, 0, 0);
        for r in &self.records {
            match r.status {
                CheckStatus::Pass => n.0 += 1,
                CheckStatus::Fail => n.1 += 1,
                CheckStatus::Inconclusive => n.2 += 1,
            }
        }
        n
    }

    /// 0 all pass, 1 any failure, 3 inconclusive-only (no failures).
    pub fn exit_code(&self) -> i32 {
        let (_, fail, inconclusive) = self.counts();
        if fail > 0 {
            1
        } else if inconclusive > 0 {
            3
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Inconclusive => "INCONCLUSIVE",
            };
            out.push_str(&format!(
                "[{status}] {}/{}: value {:e} ({} {:e}) [{}] {} — {}\n",
                r.suite,
                r.check,
                r.value,
                r.direction,
                r.tolerance,
                match r.provenance {
                    Provenance::Identity => "identity",
                    Provenance::Derived => "derived",
                    Provenance::Trivial => "trivial",
                    Provenance::Plumbing => "plumbing",
                },
                r.anchor,
                r.details,
            ));
        }
        let (pass, fail, inconclusive) = self.counts();
        out.push_str(&format!(
            "summary: {pass} passed, {fail} failed, {inconclusive} inconclusive\n"
        ));
        out
    }

    /// One JSON object per line, in canonical record order.
    pub fn render_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_exit_codes() {
        let mut rep = Report::new();
        rep.push(CheckRecord::residual("b", "x", 0.0, 1e-10, Provenance::Trivial, "t", ""));
        assert_eq!(rep.exit_code(), 0);
        rep.push(
            CheckRecord::residual("a", "y", 0.5, 1e-10, Provenance::Identity, "t", "")
                .with_status(CheckStatus::Inconclusive),
        );
        assert_eq!(rep.exit_code(), 3);
        rep.push(CheckRecord::residual("a", "z", 0.5, 1e-10, Provenance::Identity, "t", ""));
        assert_eq!(rep.exit_code(), 1);
        assert_eq!(rep.counts(), (1, 1, 1));
    }

    #[test]
    fn canonical_order_and_rendering() {
        let mut rep = Report::new();
        rep.push(CheckRecord::residual("b", "x", 0.0, 0.0, Provenance::Trivial, "t", ""));
        rep.push(CheckRecord::residual("a", "y", 0.0, 0.0, Provenance::Trivial, "t", ""));
        rep.sort();
        assert_eq!(rep.records[0].suite, "a");
        let jsonl = rep.render_jsonl();
        assert_eq!(jsonl.lines().count(), 2);
        let back: CheckRecord = serde_json::from_str(jsonl.lines().next().unwrap()).unwrap();
        assert_eq!(back.check, "y");
        assert!(rep.render_text().contains("summary: 2 passed, 0 failed, 0 inconclusive"));
    }
}
