//! Machine-readable check reports with deterministic rendering.

use serde::Serialize;

use crate::catalog::Conventions;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::Pass,
            lhs: lhs.into(),
            rhs: rhs.into(),
            residual: None,
            note: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        residual: impl Into<String>,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::Fail,
            lhs: lhs.into(),
            rhs: rhs.into(),
            residual: Some(residual.into()),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Per-suite verdict bundle. `elapsed_ms` is populated only on request so that
/// default output stays byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub conventions: Vec<(String, String)>,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, conv: &Conventions) -> Self {
        SuiteReport {
            suite: suite.into(),
            conventions: conv.describe(),
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, records: Vec<CheckRecord>) {
        self.checks.extend(records);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Pass).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("## suite {}\n\n", self.suite));
        let conv: Vec<String> =
            self.conventions.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("conventions: {}\n\n", conv.join(", ")));
        out.push_str("| check | status | detail |\n|---|---|---|\n");
        for c in &self.checks {
            let detail = match (&c.residual, &c.note) {
                (Some(r), _) => format!("residual: {}", md_escape(r)),
                (None, Some(n)) => md_escape(n),
                (None, None) => String::new(),
            };
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
            };
            out.push_str(&format!("| {} | {} | {} |\n", md_escape(&c.name), status, detail));
        }
        out.push_str(&format!(
            "\n{} of {} checks passed\n",
            self.pass_count(),
            self.checks.len()
        ));
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let conv: Vec<String> =
            self.conventions.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("suite {} [{}]\n", self.suite, conv.join(", ")));
        for c in &self.checks {
            match c.status {
                Status::Pass => out.push_str(&format!("  PASS {}\n", c.name)),
                Status::Fail => {
                    out.push_str(&format!("  FAIL {}\n", c.name));
                    out.push_str(&format!("       lhs: {}\n", c.lhs));
                    out.push_str(&format!("       rhs: {}\n", c.rhs));
                    if let Some(r) = &c.residual {
                        out.push_str(&format!("       residual: {r}\n"));
                    }
                }
            }
            if let Some(n) = &c.note {
                out.push_str(&format!("       note: {n}\n"));
            }
        }
        out.push_str(&format!(
            "  {}/{} checks passed\n",
            self.pass_count(),
            self.checks.len()
        ));
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("  elapsed: {ms} ms\n"));
        }
        out
    }
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

/// Renders a list of suite reports in the requested format.
pub fn render_reports(reports: &[SuiteReport], format: &str) -> String {
    match format {
        "json" => {
            if reports.len() == 1 {
                reports[0].to_json()
            } else {
                serde_json::to_string_pretty(reports).expect("report serialization")
            }
        }
        "md" => reports.iter().map(SuiteReport::to_markdown).collect::<Vec<_>>().join("\n"),
        _ => reports.iter().map(SuiteReport::to_text).collect::<Vec<_>>().join(""),
    }
}
