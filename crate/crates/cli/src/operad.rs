//! `operad` task.

use clap::ValueEnum;
use nvcalc_core::operad::{
    compose, koszul_sign, AnyConfiguration, ConfigRecord, OperadError, OperationRecord,
};
use nvcalc_core::report::Check;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use crate::task::{payload, Run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Validate,
    Glue,
    Sign,
    Compose,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "action", rename_all = "lowercase", deny_unknown_fields)]
enum OperadPayload {
    Validate {
        config: ConfigRecord,
    },
    Glue {
        outer: ConfigRecord,
        index: usize,
        inner: ConfigRecord,
        #[serde(default)]
        expect: Option<ConfigRecord>,
    },
    Sign {
        deg_phi1: i32,
        deg_phi2: i32,
        index: usize,
        prefix: Vec<i32>,
        #[serde(default)]
        expect: Option<i32>,
    },
    Compose {
        outer: OperationRecord,
        index: usize,
        inner: OperationRecord,
        #[serde(default)]
        expect: Option<OperationRecord>,
    },
}

/// Records that fail to convert are malformed input.
fn config(rec: &ConfigRecord) -> Result<AnyConfiguration, CliError> {
    AnyConfiguration::from_record(rec).map_err(|e| CliError::parse(e.to_string()))
}

fn operation(rec: &OperationRecord) -> Result<nvcalc_core::operad::GradedOperation, CliError> {
    rec.build().map_err(|e| match e {
        OperadError::DegreeMismatch(_) => CliError::from(e),
        other => CliError::parse(other.to_string()),
    })
}

fn close(a: &AnyConfiguration, b: &AnyConfiguration) -> bool {
    match (a, b) {
        (AnyConfiguration::Rational(x), AnyConfiguration::Rational(y)) => x.close(y),
        (AnyConfiguration::Float(x), AnyConfiguration::Float(y)) => x.close(y),
        _ => false,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("record serializes")
}

/// `action` from the command line is inserted into, or must agree with, the payload.
pub fn run_operad(mut v: Value, action: Option<Action>, run: &mut Run) -> Result<(), CliError> {
    if let (Some(a), Some(obj)) = (action, v.as_object_mut()) {
        let name = to_value(&a);
        match obj.get("action") {
            Some(existing) if *existing != name => {
                return Err(CliError::parse(format!("payload action {existing} conflicts with {name}")));
            }
            _ => {
                obj.insert("action".into(), name);
            }
        }
    }
    match payload::<OperadPayload>(v)? {
        OperadPayload::Validate { config: rec } => {
            let c = config(&rec)?;
            let val = c.validate();
            run.check(Check::boolean("valid", "little-discs", val.valid, val.diagnostics.join("; ")));
        }
        OperadPayload::Glue { outer, index, inner, expect } => {
            let glued = config(&outer)?.glue(index, &config(&inner)?)?;
            run.value("result", to_value(&glued.to_record()));
            let val = glued.validate();
            run.check(Check::boolean("glue.valid", "little-discs", val.valid, val.diagnostics.join("; ")));
            if let Some(e) = expect {
                let ok = close(&glued, &config(&e)?);
                run.check(Check::boolean("glue.expected", "little-discs", ok, ""));
            }
        }
        OperadPayload::Sign { deg_phi1, deg_phi2, index, prefix, expect } => {
            let s = koszul_sign(deg_phi1, deg_phi2, index, &prefix)?;
            run.value("sign", s);
            if let Some(e) = expect {
                run.check(Check::boolean("sign.expected", "composition-law", s == e, format!("got {s}")));
            }
        }
        OperadPayload::Compose { outer, index, inner, expect } => {
            let out = compose(&operation(&outer)?, index, &operation(&inner)?)?;
            run.value("result", to_value(&OperationRecord::from_operation(&out)));
            if let Some(e) = expect {
                let ok = operation(&e)? == out;
                run.check(Check::boolean("compose.expected", "composition-law", ok, ""));
            }
        }
    }
    Ok(())
}
