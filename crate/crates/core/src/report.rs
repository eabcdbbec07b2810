//! Pass/fail reports with a deterministic text and JSON rendering.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Rendered inputs and values of the first failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), cases: 0, failures: 0, note: None, counterexample: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records one case; `detail` is only rendered for the first failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(detail());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.cases > 0 && self.failures == 0
    }
}

/// A named value in a report, e.g. one computed row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<Entry>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: Option<u64>) -> Self {
        Report { command: command.into(), seed, checks: Vec::new(), values: Vec::new(), pass: true }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
        self.pass = self.checks.iter().all(Check::pass);
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.values.push(Entry { key: key.into(), value: value.into() });
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.command);
        if let Some(s) = self.seed {
            out.push_str(&format!("# seed {s}\n"));
        }
        for v in &self.values {
            out.push_str(&format!("{} = {}\n", v.key, v.value));
        }
        for c in &self.checks {
            let tag = if c.pass() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {} ({}/{})", c.name, c.cases - c.failures, c.cases));
            if let Some(n) = &c.note {
                out.push_str(&format!(" [{n}]"));
            }
            out.push('\n');
            if let Some(x) = &c.counterexample {
                for line in x.lines() {
                    out.push_str(&format!("  counterexample: {line}\n"));
                }
            }
        }
        out.push_str(if self.pass { "RESULT PASS\n" } else { "RESULT FAIL\n" });
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_cases_and_no_failures() {
        let mut c = Check::new("x");
        assert!(!c.pass());
        c.record(true, || unreachable!());
        assert!(c.pass());
        c.record(false, || "first".into());
        c.record(false, || "second".into());
        assert_eq!(c.counterexample.as_deref(), Some("first"));
        let mut r = Report::new("verify", Some(1));
        r.push(c);
        assert!(!r.pass);
        assert!(r.to_text().ends_with("RESULT FAIL\n"));
        assert!(r.to_json().contains("\"failures\": 2"));
    }
}
