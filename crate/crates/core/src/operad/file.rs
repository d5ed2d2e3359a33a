//! JSON records for configurations and operations.
//!
//! ```json
//! {"mode": "rational", "discs": [{"center": ["1/2", 0], "radius": "1/4"}], "framings": ["1/4"]}
//! ```

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{glue, Coord, Disc, DiscConfiguration, GradedOperation, OperadError, Point, Validation};
use crate::novikov::{qi, Q};

/// A number written as a JSON number or as a string (`"1/3"`, `"0.25"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Num {
    fn exact(&self) -> Result<Q, OperadError> {
        match self {
            Num::Int(i) => Ok(qi(*i)),
            Num::Float(f) => parse_exact(&f.to_string()),
            Num::Text(s) => parse_exact(s),
        }
    }

    fn float(&self) -> Result<f64, OperadError> {
        match self {
            Num::Int(i) => Ok(*i as f64),
            Num::Float(f) => Ok(*f),
            Num::Text(s) => match s.trim().parse::<f64>() {
                Ok(f) => Ok(f),
                Err(_) => Ok(parse_exact(s)?.to_f64().unwrap_or(f64::NAN)),
            },
        }
    }
}

/// Parses `p/q`, integers and finite decimals exactly.
pub fn parse_exact(s: &str) -> Result<Q, OperadError> {
    let t = s.trim();
    let bad = || OperadError::InvalidInput(format!("bad number `{t}`"));
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
        let n: Q = digits.parse::<num_bigint::BigInt>().map(Q::from_integer).map_err(|_| bad())?;
        let d = Q::from_integer(num_bigint::BigInt::from(10u32).pow(frac.len() as u32));
        let v = n / d;
        return Ok(if neg { -v } else { v });
    }
    let q: Q = t.parse().map_err(|_| bad())?;
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscRecord {
    pub center: [Num; 2],
    pub radius: Num,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Rational,
    Float,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigRecord {
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub discs: Vec<DiscRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framings: Option<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_point: Option<[Num; 2]>,
    #[serde(default)]
    pub identity: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnyConfiguration {
    Rational(DiscConfiguration<Q>),
    Float(DiscConfiguration<f64>),
}

fn convert<F: Coord>(rec: &ConfigRecord, num: impl Fn(&Num) -> Result<F, OperadError>) -> Result<DiscConfiguration<F>, OperadError> {
    let point = |p: &[Num; 2]| -> Result<Point<F>, OperadError> { Ok(Point::new(num(&p[0])?, num(&p[1])?)) };
    let discs = rec
        .discs
        .iter()
        .map(|d| Ok(Disc { center: point(&d.center)?, radius: num(&d.radius)? }))
        .collect::<Result<Vec<_>, OperadError>>()?;
    let framings = rec
        .framings
        .as_ref()
        .map(|f| f.iter().map(Num::exact).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    if rec.identity && !discs.is_empty() && discs.len() != 1 {
        return Err(OperadError::InvalidInput("identity configuration has exactly one disc".into()));
    }
    let mut c = if rec.identity && discs.is_empty() { DiscConfiguration::identity() } else { DiscConfiguration::new(discs) };
    c.is_identity = rec.identity;
    c.framings = framings;
    c.z_point = rec.z_point.as_ref().map(point).transpose()?;
    Ok(c)
}

fn record<F: Coord>(c: &DiscConfiguration<F>, mode: Mode, num: impl Fn(&F) -> Num) -> ConfigRecord {
    let point = |p: &Point<F>| [num(&p.re), num(&p.im)];
    ConfigRecord {
        mode,
        discs: c.discs.iter().map(|d| DiscRecord { center: point(&d.center), radius: num(&d.radius) }).collect(),
        framings: c.framings.as_ref().map(|f| f.iter().map(|t| Num::Text(t.to_string())).collect()),
        z_point: c.z_point.as_ref().map(point),
        identity: c.is_identity,
    }
}

impl AnyConfiguration {
    pub fn from_record(rec: &ConfigRecord) -> Result<Self, OperadError> {
        Ok(match rec.mode {
            Mode::Rational => AnyConfiguration::Rational(convert(rec, Num::exact)?),
            Mode::Float => AnyConfiguration::Float(convert(rec, Num::float)?),
        })
    }

    pub fn to_record(&self) -> ConfigRecord {
        match self {
            AnyConfiguration::Rational(c) => record(c, Mode::Rational, |q| Num::Text(q.to_string())),
            AnyConfiguration::Float(c) => record(c, Mode::Float, |f| Num::Float(*f)),
        }
    }

    pub fn validate(&self) -> Validation {
        match self {
            AnyConfiguration::Rational(c) => c.validate(),
            AnyConfiguration::Float(c) => c.validate(),
        }
    }

    /// Both configurations must use the same mode.
    pub fn glue(&self, i1: usize, other: &Self) -> Result<Self, OperadError> {
        match (self, other) {
            (AnyConfiguration::Rational(a), AnyConfiguration::Rational(b)) => Ok(AnyConfiguration::Rational(glue(a, i1, b)?)),
            (AnyConfiguration::Float(a), AnyConfiguration::Float(b)) => Ok(AnyConfiguration::Float(glue(a, i1, b)?)),
            _ => Err(OperadError::InvalidInput("cannot glue a rational and a float configuration".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperationEntry {
    pub inputs: Vec<usize>,
    pub value: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperationRecord {
    pub degrees: Vec<i32>,
    pub arity: usize,
    #[serde(default)]
    pub degree: i32,
    /// `true` builds the identity operation (arity 1, degree 0).
    #[serde(default)]
    pub identity: bool,
    #[serde(default)]
    pub entries: Vec<OperationEntry>,
}

impl OperationRecord {
    pub fn build(&self) -> Result<GradedOperation, OperadError> {
        if self.identity {
            if self.arity != 1 || self.degree != 0 || !self.entries.is_empty() {
                return Err(OperadError::InvalidInput("identity operation has arity 1, degree 0 and no entries".into()));
            }
            return Ok(GradedOperation::identity(self.degrees.clone()));
        }
        let mut op = GradedOperation::new(self.degrees.clone(), self.arity, self.degree);
        for e in &self.entries {
            let v = e.value.iter().map(Num::exact).collect::<Result<Vec<_>, _>>()?;
            op.set(e.inputs.clone(), v)?;
        }
        Ok(op)
    }

    pub fn from_operation(op: &GradedOperation) -> Self {
        OperationRecord {
            degrees: op.degrees.clone(),
            arity: op.arity,
            degree: op.degree,
            identity: false,
            entries: op
                .entries()
                .map(|(k, v)| OperationEntry { inputs: k.clone(), value: v.iter().map(|q| Num::Text(q.to_string())).collect() })
                .collect(),
        }
    }
}
