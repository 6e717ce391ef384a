use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Exact(String),
    Real(f64),
}

impl Residual {
    fn to_json(&self) -> Value {
        match self {
            Residual::Exact(s) => json!(s),
            Residual::Real(x) => json!(x),
        }
    }

    fn short(&self) -> String {
        match self {
            Residual::Exact(s) if s.chars().count() > 40 => format!("{}...", s.chars().take(37).collect::<String>()),
            Residual::Exact(s) => s.clone(),
            Residual::Real(x) => format!("{x:.3e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub status: Status,
    pub residual: Residual,
    pub details: String,
}

impl Check {
    pub fn new(ok: bool, residual: Residual, details: impl Into<String>) -> Self {
        Self {
            status: Status::from_bool(ok),
            residual,
            details: details.into(),
        }
    }

    pub fn fail(details: impl Into<String>) -> Self {
        Self::new(false, Residual::Exact(String::new()), details)
    }
}

/// Named checks, sorted by name; passes iff every check passes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: BTreeMap<String, Check>,
    pub skipped: Vec<String>,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        Status::from_bool(self.checks.values().all(|c| c.status == Status::Pass))
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.status == Status::Fail)
            .map(|(n, _)| n.as_str())
    }

    pub fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self
            .checks
            .iter()
            .map(|(name, c)| {
                (
                    name.clone(),
                    json!({
                        "status": c.status.as_str(),
                        "residual": c.residual.to_json(),
                        "details": c.details,
                    }),
                )
            })
            .collect();
        let mut skipped = self.skipped.clone();
        skipped.sort();
        json!({
            "status": self.status().as_str(),
            "checks": checks,
            "skipped": skipped,
        })
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.keys().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        for (name, c) in &self.checks {
            writeln!(
                out,
                "{:<4}  {name:<width$}  {:<12}  {}",
                c.status.as_str().to_uppercase(),
                c.residual.short(),
                c.details
            )
            .unwrap();
        }
        for name in &self.skipped {
            writeln!(out, "SKIP  {name}").unwrap();
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        writeln!(
            out,
            "{}: {} of {total} checks passed, {} skipped",
            self.status().as_str(),
            total - failed,
            self.skipped.len()
        )
        .unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_status_and_ordering() {
        let mut r = VerificationReport::default();
        assert_eq!(r.status(), Status::Pass);
        r.checks.insert("b".into(), Check::new(true, Residual::Real(1e-9), "ok"));
        r.checks.insert("a".into(), Check::new(true, Residual::Exact("0".into()), ""));
        assert_eq!(r.status(), Status::Pass);
        r.checks.insert("c".into(), Check::fail("boom"));
        assert_eq!(r.status(), Status::Fail);
        assert_eq!(r.failures().collect::<Vec<_>>(), ["c"]);
        let table = r.to_table();
        let names: Vec<&str> = table.lines().take(3).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert!(table.ends_with("fail: 2 of 3 checks passed, 0 skipped\n"));
    }
}
