//! JSON model files: either a preset or explicit tables, plus overrides.
//!
//! ```json
//! {
//!   "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 0}, {"name": "y", "degree": -1}],
//!   "unit": "1",
//!   "product": [{"left": "x", "right": "y", "result": {"y": "q"}}],
//!   "delta": [{"of": "x", "result": {"y": "1"}}],
//!   "connection": [],
//!   "elements": {"a": {"x": "1"}}
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{presets, BVModel, BvError, Connection};
use crate::gw::ClassDecl;
use crate::linalg::SeriesVec;
use crate::novikov::{NovikovSeries, Truncation};
use crate::ode::OdeProblem;

/// An element as `{basis name: coefficient series}`.
pub type ElementRecord = BTreeMap<String, NovikovSeries>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub left: String,
    pub right: String,
    pub result: ElementRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRecord {
    pub of: String,
    pub result: ElementRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum BvPreset {
    Polyvector { vars: usize, n: usize },
    PolyvectorAffine { n: usize },
    PolyvectorXiDefect { n: usize },
    /// `K[s]/(s^n)`; needs the ODE problem.
    Synthetic { n: usize },
    Scalar,
    OddDerivation,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BvModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<BvPreset>,
    #[serde(default)]
    pub basis: Vec<ClassDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    /// Graded-commutative: each entry also sets the reversed product.
    #[serde(default)]
    pub product: Vec<ProductRecord>,
    #[serde(default)]
    pub delta: Vec<LinearRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<ProductRecord>>,
    /// Linear part of the connection.
    #[serde(default)]
    pub connection: Vec<LinearRecord>,
    #[serde(default)]
    pub elements: BTreeMap<String, ElementRecord>,
}

fn max_n(n: usize, bound: usize) -> Result<usize, BvError> {
    if n == 0 || n > bound {
        return Err(BvError::InvalidModel(format!("preset size {n} out of range 1..={bound}")));
    }
    Ok(n)
}

impl BvPreset {
    pub fn build(&self, prob: Option<&OdeProblem>) -> Result<(BVModel, Connection), BvError> {
        let plain = |m: BVModel| {
            let n = m.dim();
            (m, Connection::trivial(n))
        };
        Ok(match self {
            BvPreset::Polyvector { vars, n } => {
                if !(1..=2).contains(vars) {
                    return Err(BvError::InvalidModel("polyvector supports 1 or 2 variables".into()));
                }
                plain(presets::polyvector(*vars, max_n(*n, 8)?))
            }
            BvPreset::PolyvectorAffine { n } => plain(presets::polyvector_affine(max_n(*n, 8)?)),
            BvPreset::PolyvectorXiDefect { n } => plain(presets::polyvector_xi_defect(max_n(*n, 8)?)),
            BvPreset::Synthetic { n } => {
                let prob = prob.ok_or_else(|| BvError::InvalidModel("the synthetic preset needs an ODE problem".into()))?;
                if *n < 2 {
                    return Err(BvError::InvalidModel("the synthetic preset needs n >= 2".into()));
                }
                presets::synthetic_bs(prob, max_n(*n, 12)?)
            }
            BvPreset::Scalar => presets::scalar_shadow(),
            BvPreset::OddDerivation => plain(presets::odd_derivation()),
        })
    }
}

impl BvModelFile {
    pub fn build(&self, trunc: Option<&Truncation>, prob: Option<&OdeProblem>) -> Result<(BVModel, Connection), BvError> {
        let (mut model, mut nabla) = match &self.preset {
            Some(p) => {
                if !self.basis.is_empty() {
                    return Err(BvError::InvalidModel("give either a preset or a basis, not both".into()));
                }
                p.build(prob)?
            }
            None => {
                let names: Vec<String> = self.basis.iter().map(|c| c.name.clone()).collect();
                let degrees = self.basis.iter().map(|c| c.degree).collect();
                let unit = self.unit.as_deref().unwrap_or("1");
                let u = names.iter().position(|n| n == unit).ok_or_else(|| BvError::UnknownElement(unit.into()))?;
                let n = names.len();
                (BVModel::new(names, degrees, u)?, Connection::trivial(n))
            }
        };
        for r in &self.product {
            let (i, j) = (model.index(&r.left)?, model.index(&r.right)?);
            let v = element(&model, &r.result)?;
            model.set_product(i, j, v);
        }
        for r in &self.delta {
            let i = model.index(&r.of)?;
            let v = element(&model, &r.result)?;
            model.set_delta(i, v);
        }
        if let Some(b) = &self.bracket {
            for r in b {
                let (i, j) = (model.index(&r.left)?, model.index(&r.right)?);
                let v = element(&model, &r.result)?;
                model.set_bracket_entry(i, j, v);
            }
        }
        for r in &self.connection {
            let i = model.index(&r.of)?;
            nabla.linear[i] = element(&model, &r.result)?;
        }
        for (name, rec) in &self.elements {
            let v = element(&model, rec)?;
            model.set_element(name, v);
        }
        if let Some(t) = trunc {
            model = model.truncate(t);
            nabla = Connection { linear: nabla.linear.iter().map(|v| v.truncate(t)).collect() };
        }
        Ok((model, nabla))
    }
}

/// Resolves `{basis name: series}` against the model.
pub fn element(model: &BVModel, rec: &ElementRecord) -> Result<SeriesVec, BvError> {
    let mut v = model.zero();
    for (k, s) in rec {
        let i = model.index(k)?;
        v.0[i] = v.0[i].add(s);
    }
    Ok(v)
}
