//! Verification reports: a named list of identity checks, each with its
//! equation tag and the rendering of its residual.

use std::fmt;

use serde::Serialize;

use crate::novikov::{NovikovSeries, USeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Something that can be checked for vanishing and printed.
pub trait Residual {
    /// No known nonzero term.
    fn vanishes(&self) -> bool;
    fn render(&self) -> String;
}

impl Residual for NovikovSeries {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        NovikovSeries::render(self)
    }
}

impl Residual for USeries {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn render(&self) -> String {
        USeries::render(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub equation: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn from_residual<R: Residual + ?Sized>(name: &str, equation: &str, r: &R) -> Self {
        Check {
            name: name.to_string(),
            equation: equation.to_string(),
            status: if r.vanishes() { Status::Pass } else { Status::Fail },
            residual: Some(r.render()),
            detail: None,
        }
    }

    pub fn boolean(name: &str, equation: &str, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Check {
            name: name.to_string(),
            equation: equation.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: None,
            detail: if detail.is_empty() { None } else { Some(detail) },
        }
    }

    pub fn error(name: &str, equation: &str, err: impl fmt::Display) -> Self {
        Check {
            name: name.to_string(),
            equation: equation.to_string(),
            status: Status::Error,
            residual: None,
            detail: Some(err.to_string()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            write!(f, "[{tag}] {} ({})", c.name, c.equation)?;
            if let Some(r) = &c.residual {
                write!(f, " residual = {r}")?;
            }
            if let Some(d) = &c.detail {
                write!(f, " -- {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
