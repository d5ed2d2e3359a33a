//! Text and JSON encodings of series.

use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{NovikovSeries, Q, SeriesError, Truncation};

/// One `{"exp": "p/q", "coeff": "p/q"}` record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: String,
    pub coeff: String,
}

/// JSON form of a series: either the record form
/// `{"terms": [...], "trunc": "p/q" | "inf"}` or a string in the canonical
/// rendering (`"1 + q^2 + O(q^5)"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesRecord {
    Text(String),
    Terms {
        terms: Vec<TermRecord>,
        #[serde(default)]
        trunc: Option<String>,
    },
}

pub(crate) fn parse_rational(s: &str) -> Result<Q, SeriesError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(SeriesError::Parse("empty rational".into()));
    }
    Q::from_str(t).map_err(|e| SeriesError::Parse(format!("bad rational `{t}`: {e}")))
}

fn parse_trunc(s: &str) -> Result<Truncation, SeriesError> {
    match s.trim() {
        "inf" | "+inf" | "infinity" => Ok(Truncation::Infinite),
        other => Ok(Truncation::At(parse_rational(other)?)),
    }
}

impl SeriesRecord {
    pub fn to_series(&self) -> Result<NovikovSeries, SeriesError> {
        match self {
            SeriesRecord::Text(s) => parse_series(s),
            SeriesRecord::Terms { terms, trunc } => {
                let trunc = match trunc {
                    Some(t) => parse_trunc(t)?,
                    None => Truncation::Infinite,
                };
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    out.push((parse_rational(&t.exp)?, parse_rational(&t.coeff)?));
                }
                Ok(NovikovSeries::from_terms(out, trunc))
            }
        }
    }

    pub fn from_series(s: &NovikovSeries) -> Self {
        SeriesRecord::Terms {
            terms: s
                .terms()
                .map(|(e, c)| TermRecord { exp: e.to_string(), coeff: c.to_string() })
                .collect(),
            trunc: Some(s.truncation().to_string()),
        }
    }
}

impl Serialize for NovikovSeries {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        SeriesRecord::from_series(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for NovikovSeries {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let rec = SeriesRecord::deserialize(de)?;
        rec.to_series().map_err(serde::de::Error::custom)
    }
}

impl FromStr for NovikovSeries {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_series(s)
    }
}

/// Parses the canonical rendering in the variable `q` (or `h`).
///
/// Accepted terms: `c`, `c*q^e`, `q^e`, `-q`, `O(q^e)`, where `c` is an
/// integer or `p/q` and `e` is an integer or a parenthesised rational.
pub fn parse_series(input: &str) -> Result<NovikovSeries, SeriesError> {
    let src: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(SeriesError::Parse("empty series".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in src.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        // a sign right after `^` belongs to the exponent
        let is_sep = depth == 0 && (ch == '+' || ch == '-') && prev != Some('^');
        if is_sep {
            if !cur.is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            } else if prev.is_some() && prev != Some('+') && prev != Some('-') {
                return Err(SeriesError::Parse(format!("dangling sign in `{input}`")));
            }
            neg = if cur.is_empty() && matches!(prev, Some('+') | Some('-')) {
                neg ^ (ch == '-')
            } else {
                ch == '-'
            };
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(SeriesError::Parse(format!("unbalanced parentheses in `{input}`")));
    }
    if cur.is_empty() {
        return Err(SeriesError::Parse(format!("trailing sign in `{input}`")));
    }
    pieces.push((neg, cur));

    let mut terms = Vec::new();
    let mut trunc = Truncation::Infinite;
    for (neg, body) in pieces {
        if let Some(inner) = body.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
            if neg {
                return Err(SeriesError::Parse("negated O-term".into()));
            }
            let e = parse_monomial_exponent(inner)?;
            trunc = trunc.min(Truncation::At(e));
            continue;
        }
        let (coeff, mono) = match body.split_once('*') {
            Some((c, m)) => (parse_rational(c)?, Some(m.to_string())),
            None if body.starts_with(|c: char| c.is_ascii_alphabetic()) => (Q::one(), Some(body.clone())),
            None => (parse_rational(&body)?, None),
        };
        let exp = match mono {
            Some(m) => parse_monomial_exponent(&m)?,
            None => Q::zero(),
        };
        terms.push((exp, if neg { -coeff } else { coeff }));
    }
    Ok(NovikovSeries::from_terms(terms, trunc))
}

fn parse_monomial_exponent(m: &str) -> Result<Q, SeriesError> {
    if m == "1" {
        return Ok(Q::zero());
    }
    let mut chars = m.chars();
    let var = chars.next().ok_or_else(|| SeriesError::Parse("empty monomial".into()))?;
    if !var.is_ascii_alphabetic() {
        return Err(SeriesError::Parse(format!("bad monomial `{m}`")));
    }
    let rest: String = chars.collect();
    if rest.is_empty() {
        return Ok(Q::one());
    }
    let exp = rest
        .strip_prefix('^')
        .ok_or_else(|| SeriesError::Parse(format!("bad monomial `{m}`")))?;
    let exp = exp.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(exp);
    parse_rational(exp)
}

/// Serde adapters encoding rationals as `"p/q"` strings. Use with
/// `#[serde(with = "crate::novikov::rational")]`.
pub mod rational {
    use super::{parse_rational, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Q, D::Error> {
        let raw = RawRational::deserialize(de)?;
        raw.into_q().map_err(serde::de::Error::custom)
    }

    /// Accepts `"p/q"` strings and plain integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Int(i64),
        Text(String),
    }

    impl RawRational {
        pub(crate) fn into_q(self) -> Result<Q, crate::novikov::SeriesError> {
            match self {
                RawRational::Int(i) => Ok(Q::from_integer(i.into())),
                RawRational::Text(s) => parse_rational(&s),
            }
        }
    }

    pub mod vec {
        use super::{RawRational, Q};
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Q], ser: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(ser)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Q>, D::Error> {
            let raw = Vec::<RawRational>::deserialize(de)?;
            raw.into_iter()
                .map(|r| r.into_q().map_err(serde::de::Error::custom))
                .collect()
        }
    }
}
