use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::ValueEnum;
use nvcalc_core::report::{Check, Report, Status};
use nvcalc_core::{Truncation, Q};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, EXIT_FAILED, EXIT_OK};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Ode,
    Gw,
    Mirror,
    Bv,
    Operad,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Ode => "ode",
            TaskKind::Gw => "gw",
            TaskKind::Mirror => "mirror",
            TaskKind::Bv => "bv",
            TaskKind::Operad => "operad",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// `{"task": "ode", "payload": {...}, "output": "json", "trunc": "8"}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    pub task: TaskKind,
    pub payload: Value,
    #[serde(default)]
    pub output: Option<OutputFormat>,
    #[serde(default)]
    pub trunc: Option<String>,
}

impl TaskFile {
    /// A file is a task file when its top level carries `task` and `payload`;
    /// anything else is a bare payload for `kind`.
    pub fn from_value(v: Value, kind: Option<TaskKind>) -> Result<Self, CliError> {
        let is_task = v.get("task").is_some() && v.get("payload").is_some();
        if is_task {
            let tf: TaskFile = serde_json::from_value(v)?;
            if let Some(k) = kind {
                if k != tf.task {
                    return Err(CliError::parse(format!(
                        "task file is for `{}`, not `{}`",
                        tf.task.name(),
                        k.name()
                    )));
                }
            }
            return Ok(tf);
        }
        match kind {
            Some(task) => Ok(TaskFile { task, payload: v, output: None, trunc: None }),
            None => Err(CliError::parse("expected a task file with `task` and `payload`")),
        }
    }
}

pub fn parse_trunc(s: &str) -> Result<Truncation, CliError> {
    match s.trim() {
        "inf" => Ok(Truncation::Infinite),
        t => Q::from_str(t)
            .map(Truncation::At)
            .map_err(|e| CliError::parse(format!("bad truncation `{t}`: {e}"))),
    }
}

/// Checks and computed values of one run.
#[derive(Debug, Default)]
pub struct Run {
    pub report: Report,
    pub values: BTreeMap<String, Value>,
    pub trunc: Option<Truncation>,
}

impl Run {
    pub fn new(trunc: Option<Truncation>) -> Self {
        Run { trunc, ..Default::default() }
    }

    pub fn check(&mut self, c: Check) {
        self.report.push(c);
    }

    pub fn extend(&mut self, rep: Report) {
        self.report.extend(rep);
    }

    /// Appends a report with every check name prefixed.
    pub fn extend_prefixed(&mut self, prefix: &str, rep: Report) {
        for mut c in rep.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.report.push(c);
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<Value>) {
        self.values.insert(key.to_string(), v.into());
    }

    /// Caps an order by the global truncation override.
    pub fn cap(&self, order: Q) -> Q {
        match &self.trunc {
            Some(Truncation::At(t)) if *t < order => t.clone(),
            _ => order,
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorOut<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Debug, Serialize)]
struct Output<'a> {
    schema: u32,
    task: &'a str,
    status: &'a str,
    checks: &'a [Check],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<&'a str>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    values: &'a BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorOut<'a>>,
}

pub struct Outcome {
    pub task: TaskKind,
    pub run: Run,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match &self.error {
            Some(e) => e.exit_code(),
            None if self.run.report.all_pass() => EXIT_OK,
            None => EXIT_FAILED,
        }
    }

    fn status(&self) -> &'static str {
        match (&self.error, self.run.report.all_pass()) {
            (Some(_), _) => "error",
            (None, true) => "pass",
            (None, false) => "fail",
        }
    }

    pub fn render(&self, fmt: OutputFormat) -> String {
        match fmt {
            OutputFormat::Json => self.render_json(),
            OutputFormat::Text => self.render_text(),
        }
    }

    fn render_json(&self) -> String {
        let out = Output {
            schema: SCHEMA,
            task: self.task.name(),
            status: self.status(),
            checks: &self.run.report.checks,
            failures: self.run.report.failures().map(|c| c.name.as_str()).collect(),
            values: &self.run.values,
            error: self.error.as_ref().map(|e| ErrorOut { kind: e.kind(), message: e.to_string() }),
        };
        let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
        s.push('\n');
        s
    }

    fn render_text(&self) -> String {
        let mut s = format!("task: {}\n", self.task.name());
        s.push_str(&self.run.report.to_string());
        for (k, v) in &self.run.values {
            match v {
                Value::String(t) => writeln!(s, "{k} = {t}").unwrap(),
                other => writeln!(s, "{k} = {other}").unwrap(),
            }
        }
        if let Some(e) = &self.error {
            writeln!(s, "error ({}): {e}", e.kind()).unwrap();
        }
        let total = self.run.report.checks.len();
        let failed = self.run.report.checks.iter().filter(|c| c.status != Status::Pass).count();
        writeln!(s, "status: {} ({total} checks, {failed} failed)", self.status()).unwrap();
        s
    }
}

/// Deserializes a payload, reporting schema problems as parse errors.
pub fn payload<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::parse(format!("payload: {e}")))
}
