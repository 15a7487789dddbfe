//! Suite-level report types with text and JSON rendering.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub info: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
    /// Wall-clock time; kept out of the serialized forms so identical
    /// invocations stay byte-identical.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            pass: true,
            checks: vec![],
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, info: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(CheckLine {
            name: name.into(),
            pass,
            info: info.into(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "[{status}] suite {} ({} checks)",
            self.suite,
            self.checks.len()
        )?;
        for c in self.failures() {
            writeln!(f, "    FAIL {}: {}", c.name, c.info)?;
        }
        Ok(())
    }
}
