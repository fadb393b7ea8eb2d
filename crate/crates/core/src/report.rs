//! Command reports, as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

/// JSON schema every `--json` report validates against.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    /// 0 on pass, 1 on a failed property, 2 on unusable input.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Detail {
    pub name: String,
    pub value: String,
}

/// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub property: String,
    pub cases: u64,
    pub failures: Vec<String>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
    pub details: Vec<Detail>,
}

impl Report {
    pub fn new(command: &str, instance: impl Into<String>, property: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            instance: instance.into(),
            property: property.into(),
            cases: 0,
            failures: Vec::new(),
            verdict: Verdict::Pass,
            elapsed_ms: 0,
            details: Vec::new(),
        }
    }

    pub fn detail(&mut self, name: impl Into<String>, value: impl ToString) -> &mut Self {
        self.details.push(Detail {
            name: name.into(),
            value: value.to_string(),
        });
        self
    }

    pub fn fail(&mut self, failure: impl Into<String>) -> &mut Self {
        self.failures.push(failure.into());
        self.verdict = Verdict::Fail;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.instance);
        for d in &self.details {
            let _ = writeln!(s, "  {}: {}", d.name, d.value);
        }
        for f in &self.failures {
            let _ = writeln!(s, "  failure: {f}");
        }
        let _ = writeln!(
            s,
            "{}: {} ({} case{})",
            self.property,
            self.verdict.as_str(),
            self.cases,
            if self.cases == 1 { "" } else { "s" }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_in_order() {
        let mut r = Report::new("parse", "omega", "round-trip");
        r.detail("size", "infinite");
        let json = r.to_json();
        let keys = [
            "command", "instance", "property", "cases", "failures", "verdict", "elapsed_ms", "details",
        ];
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("\"verdict\": \"pass\""));
    }

    #[test]
    fn failing_sets_verdict() {
        let mut r = Report::new("oracle", "n", "duality");
        r.fail("x");
        assert_eq!(r.verdict.exit_code(), 1);
        assert!(r.to_text().contains("duality: fail (0 cases)"));
    }
}
