//! JSON model files.
//!
//! ```json
//! {
//!   "basis": [{"name": "1", "degree": 0}, {"name": "D", "degree": 2}, {"name": "M", "degree": 2}],
//!   "omega": {"D": "1", "M": "3"},
//!   "restriction_kill": ["M"],
//!   "cup": [{"left": "D", "right": "M", "result": {"P": "1"}}],
//!   "qpieces": [{"left": "P", "right": "M", "k": 1, "result": {"P": "q"}}],
//!   "divisor_axioms": true,
//!   "gw": {"z1": {"D": "q^2"}, "z2": {"1": "1/4"}}
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ClassDecl, CohomologyModel, GwData, GwError};
use crate::linalg::SeriesVec;
use crate::novikov::{parse_rational, NovikovSeries, Truncation, Q};

/// A class-valued series as `{class name: series}`.
pub type ClassSeriesRecord = BTreeMap<String, NovikovSeries>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub k: u32,
    pub result: ClassSeriesRecord,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwRecord {
    #[serde(default)]
    pub z0: ClassSeriesRecord,
    #[serde(default)]
    pub z1: ClassSeriesRecord,
    #[serde(default)]
    pub z2: ClassSeriesRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z2tilde: Option<ClassSeriesRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub basis: Vec<ClassDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction_kill: Option<Vec<String>>,
    #[serde(default)]
    pub cup: Vec<TableRecord>,
    /// Entries applied after the divisor-axiom seeding (they override it).
    #[serde(default)]
    pub qpieces: Vec<TableRecord>,
    #[serde(default = "default_true")]
    pub divisor_axioms: bool,
    #[serde(default)]
    pub gw: GwRecord,
}

impl ModelFile {
    /// Builds the model and GW data. With `trunc`, every input series is
    /// truncated first.
    pub fn build(&self, trunc: Option<&Truncation>) -> Result<(CohomologyModel, GwData), GwError> {
        let names: Vec<String> = self.basis.iter().map(|c| c.name.clone()).collect();
        let omega = match &self.omega {
            None => None,
            Some(map) => {
                let mut v = vec![Q::from_integer(0.into()); names.len()];
                for (k, c) in map {
                    let i = position(&names, k)?;
                    v[i] = parse_rational(c)?;
                }
                Some(v)
            }
        };
        let mut model = CohomologyModel::new(self.basis.clone(), omega, self.restriction_kill.clone())?;
        let vec_of = |rec: &ClassSeriesRecord| -> Result<SeriesVec, GwError> {
            let mut v = SeriesVec::zero(names.len());
            for (k, s) in rec {
                let i = position(&names, k)?;
                v.0[i] = match trunc {
                    Some(t) => s.truncate(t),
                    None => s.clone(),
                };
            }
            Ok(v)
        };
        let gw = GwData {
            z0: vec_of(&self.gw.z0)?,
            z1: vec_of(&self.gw.z1)?,
            z2: vec_of(&self.gw.z2)?,
            z2tilde: self.gw.z2tilde.as_ref().map(&vec_of).transpose()?,
            gamma: self.gw.gamma.as_deref().map(parse_rational).transpose()?,
        };
        for r in &self.cup {
            let (i, j) = (position(&names, &r.left)?, position(&names, &r.right)?);
            model.set_cup(i, j, vec_of(&r.result)?)?;
        }
        if self.divisor_axioms {
            model.seed_divisor_products(&gw)?;
        }
        for r in &self.qpieces {
            let (i, j) = (position(&names, &r.left)?, position(&names, &r.right)?);
            model.set_piece(r.k, i, j, vec_of(&r.result)?)?;
        }
        Ok((model, gw))
    }
}

fn position(names: &[String], n: &str) -> Result<usize, GwError> {
    names.iter().position(|x| x == n).ok_or_else(|| GwError::UnknownClass(n.to_string()))
}
