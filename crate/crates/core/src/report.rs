//! Tagged pass/fail results shared by the validators.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub tag: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An ordered list of named checks. Order is fixed by the validator, so reports are deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, tag: &str, failure: Option<String>) {
        self.checks.push(Check { tag: tag.to_string(), ok: failure.is_none(), detail: failure });
    }

    pub fn pass(&mut self, tag: &str) {
        self.push(tag, None);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.tag.as_str()).collect()
    }

    pub fn get(&self, tag: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.tag == tag)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.detail {
                None => writeln!(f, "{:<22} ok", c.tag)?,
                Some(d) => writeln!(f, "{:<22} FAILED  {d}", c.tag)?,
            }
        }
        Ok(())
    }
}
