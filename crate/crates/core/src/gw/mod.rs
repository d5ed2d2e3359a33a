//! Finite quantum-cohomology models of a surface `F` with a distinguished
//! divisor `M`, split into pieces `*^(k)` of degree `-2k`, together with the
//! one-pointed invariants `z^(k)` and the relations between them.
//!
//! The class `W = q^{-1}[omega]` is either a basis class named `W` (with
//! `d_q W = -q^{-1} W`) or is built from the constant vector `omega`.

mod file;
mod gauss_manin;

pub use file::{ClassSeriesRecord, ModelFile, TableRecord};
pub use gauss_manin::{EqModuleModel, GaussManin, EQ_BASIS, SOURCE_BASIS};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{SeriesVec, USeriesVec};
use crate::novikov::{q, qi, NovikovSeries, SeriesError, Truncation, Q};
use crate::report::{Check, Report, Status};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GwError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDecl {
    pub name: String,
    pub degree: i32,
}

impl ClassDecl {
    pub fn new(name: &str, degree: i32) -> Self {
        ClassDecl { name: name.to_string(), degree }
    }
}

type Table = BTreeMap<(usize, usize), SeriesVec>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyModel {
    basis: Vec<ClassDecl>,
    names: Vec<String>,
    cup: Table,
    pieces: BTreeMap<u32, Table>,
    killed: Vec<usize>,
    omega: Option<Vec<Q>>,
}

/// One-pointed invariants `z^(0), z^(1), z^(2)`, optionally the relative
/// class `z~^(2)` and the blow-up parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwData {
    pub z0: SeriesVec,
    pub z1: SeriesVec,
    pub z2: SeriesVec,
    pub z2tilde: Option<SeriesVec>,
    pub gamma: Option<Q>,
}

impl GwData {
    pub fn zero(n: usize) -> Self {
        GwData {
            z0: SeriesVec::zero(n),
            z1: SeriesVec::zero(n),
            z2: SeriesVec::zero(n),
            z2tilde: None,
            gamma: None,
        }
    }

    pub fn truncate(&self, t: &Truncation) -> Self {
        GwData {
            z0: self.z0.truncate(t),
            z1: self.z1.truncate(t),
            z2: self.z2.truncate(t),
            z2tilde: self.z2tilde.as_ref().map(|z| z.truncate(t)),
            gamma: self.gamma.clone(),
        }
    }
}

impl CohomologyModel {
    /// An empty model: all products zero. `killed` lists the classes sent
    /// to zero by restriction to `E` (default: `M`).
    pub fn new(basis: Vec<ClassDecl>, omega: Option<Vec<Q>>, killed: Option<Vec<String>>) -> Result<Self, GwError> {
        let names: Vec<String> = basis.iter().map(|c| c.name.clone()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(GwError::InvalidModel(format!("duplicate class `{n}`")));
            }
        }
        if !names.iter().any(|n| n == "M") {
            return Err(GwError::InvalidModel("basis must contain the class `M`".into()));
        }
        if let Some(w) = &omega {
            if w.len() != basis.len() {
                return Err(GwError::InvalidModel("omega has the wrong length".into()));
            }
        }
        let mut model = CohomologyModel {
            basis,
            names,
            cup: Table::new(),
            pieces: BTreeMap::new(),
            killed: Vec::new(),
            omega,
        };
        if !model.names.iter().any(|n| n == "W") && model.omega.is_none() {
            return Err(GwError::InvalidModel("need either a basis class `W` or omega".into()));
        }
        let killed = killed.unwrap_or_else(|| vec!["M".to_string()]);
        model.killed = killed.iter().map(|n| model.index(n)).collect::<Result<_, _>>()?;
        if let Some(u) = model.unit_index() {
            for i in 0..model.dim() {
                let v = SeriesVec::basis(model.dim(), i);
                model.cup.insert((u, i), v.clone());
                model.pieces.entry(0).or_default().insert((u, i), v);
            }
        }
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis(&self) -> &[ClassDecl] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn index(&self, name: &str) -> Result<usize, GwError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GwError::UnknownClass(name.to_string()))
    }

    pub fn class(&self, name: &str) -> Result<SeriesVec, GwError> {
        Ok(SeriesVec::basis(self.dim(), self.index(name)?))
    }

    /// The class named `1`, if present; products with it are set to the
    /// identity.
    pub fn unit_index(&self) -> Option<usize> {
        self.names.iter().position(|n| n == "1")
    }

    pub fn m(&self) -> SeriesVec {
        self.class("M").expect("validated in new")
    }

    pub fn omega(&self) -> Option<&[Q]> {
        self.omega.as_deref()
    }

    /// `q^{-1}[omega]`.
    pub fn w(&self) -> SeriesVec {
        if let Ok(i) = self.index("W") {
            return SeriesVec::basis(self.dim(), i);
        }
        let om = self.omega.as_ref().expect("validated in new");
        SeriesVec(om.iter().map(|c| NovikovSeries::monomial(c.clone(), qi(-1))).collect())
    }

    /// `d_q` on class-valued series, with `d_q W = -q^{-1} W` for a basis
    /// class `W`.
    pub fn d_q(&self, x: &SeriesVec) -> SeriesVec {
        let mut out = x.d_q();
        if let Ok(i) = self.index("W") {
            let extra = x.get(i).shift(&qi(-1)).neg();
            out.0[i] = out.0[i].add(&extra);
        }
        out
    }

    /// Restriction to `E`: zeroes the killed components.
    pub fn restrict(&self, x: &SeriesVec) -> SeriesVec {
        let mut out = x.clone();
        for &i in &self.killed {
            out.0[i] = NovikovSeries::zero();
        }
        out
    }

    /// Degree of a homogeneous class; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self, x: &SeriesVec) -> Option<i32> {
        let mut deg = None;
        for i in x.support() {
            match deg {
                None => deg = Some(self.degree(i)),
                Some(d) if d != self.degree(i) => return None,
                _ => {}
            }
        }
        deg
    }

    fn check_degree(&self, i: usize, j: usize, shift: i32, v: &SeriesVec) -> Result<(), GwError> {
        let want = self.degree(i) + self.degree(j) - shift;
        for c in v.support() {
            if self.degree(c) != want {
                return Err(GwError::DegreeMismatch(format!(
                    "{} x {} should land in degree {want}, but has a [{}] component",
                    self.names[i], self.names[j], self.names[c]
                )));
            }
        }
        Ok(())
    }

    pub fn set_cup(&mut self, i: usize, j: usize, v: SeriesVec) -> Result<(), GwError> {
        self.check_degree(i, j, 0, &v)?;
        self.cup.insert((i, j), v);
        Ok(())
    }

    pub fn set_piece(&mut self, k: u32, i: usize, j: usize, v: SeriesVec) -> Result<(), GwError> {
        self.check_degree(i, j, 2 * k as i32, &v)?;
        self.pieces.entry(k).or_default().insert((i, j), v);
        Ok(())
    }

    /// Sets `x_i * x_j` and `x_j * x_i` (classes here have even degree).
    pub fn set_piece_sym(&mut self, k: u32, i: usize, j: usize, v: SeriesVec) -> Result<(), GwError> {
        self.set_piece(k, i, j, v.clone())?;
        self.set_piece(k, j, i, v)
    }

    /// Drops every `*^(k)` entry.
    pub fn clear_level(&mut self, k: u32) {
        self.pieces.remove(&k);
    }

    pub fn piece_levels(&self) -> impl Iterator<Item = u32> + '_ {
        self.pieces.keys().copied()
    }

    /// Entry `(i,j)`, or the graded-commutative transpose of `(j,i)`.
    fn lookup(&self, table: &Table, i: usize, j: usize) -> Option<SeriesVec> {
        if let Some(v) = table.get(&(i, j)) {
            return Some(v.clone());
        }
        table.get(&(j, i)).map(|v| {
            if (self.degree(i) * self.degree(j)) % 2 != 0 {
                v.neg()
            } else {
                v.clone()
            }
        })
    }

    fn bilinear(&self, table: Option<&Table>, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        let mut out = SeriesVec::zero(self.dim());
        let Some(table) = table else { return out };
        for i in x.support() {
            for j in y.support() {
                if let Some(v) = self.lookup(table, i, j) {
                    out = out.add(&v.scale(&x.get(i).mul(y.get(j))));
                }
            }
        }
        // keep the truncation of the inputs even where the table is empty
        let t = x.truncation().min(y.truncation());
        out.truncate(&t)
    }

    pub fn cup(&self, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        self.bilinear(Some(&self.cup), x, y)
    }

    /// `x *^(k) y`.
    pub fn piece(&self, k: u32, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        self.bilinear(self.pieces.get(&k), x, y)
    }

    /// `x * y = sum_k x *^(k) y`.
    pub fn quantum_mul(&self, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        let mut out = SeriesVec::zero(self.dim()).truncate(&x.truncation().min(y.truncation()));
        for k in self.pieces.keys() {
            out = out.add(&self.piece(*k, x, y));
        }
        out
    }

    /// `x *^(k) y` for homogeneous inputs, with its degree `|x|+|y|-2k`.
    pub fn quantum_piece_homogeneous(&self, k: u32, x: &SeriesVec, y: &SeriesVec) -> Result<(SeriesVec, i32), GwError> {
        let dx = self
            .homogeneous_degree(x)
            .ok_or_else(|| GwError::DegreeMismatch("left input is not homogeneous".into()))?;
        let dy = self
            .homogeneous_degree(y)
            .ok_or_else(|| GwError::DegreeMismatch("right input is not homogeneous".into()))?;
        Ok((self.piece(k, x, y), dx + dy - 2 * k as i32))
    }

    /// `(q^{-1} d_q + d_q^2) z`.
    fn divisor_operator(&self, z: &SeriesVec) -> SeriesVec {
        let d1 = self.d_q(z);
        d1.scale(&NovikovSeries::monomial(Q::one(), qi(-1))).add(&self.d_q(&d1))
    }

    /// Right-hand sides of the divisor relations split by level `k`:
    /// `(M*M, W*M, W*W)`.
    fn divisor_targets(&self, gw: &GwData) -> [[SeriesVec; 3]; 3] {
        let (m, w) = (self.m(), self.w());
        let n = self.dim();
        let mm = [SeriesVec::zero(n), gw.z1.clone(), gw.z2.scale_q(&qi(4))];
        let wm = [self.cup(&w, &m), self.d_q(&gw.z1), self.d_q(&gw.z2).scale_q(&qi(2))];
        let ww = [
            self.cup(&w, &w).add(&self.divisor_operator(&gw.z0)),
            self.divisor_operator(&gw.z1),
            self.divisor_operator(&gw.z2),
        ];
        [mm, wm, ww]
    }

    /// Fills `M*M`, `W*M` and `W*W` (or, without a basis class `W`, the
    /// products of `M` and the other class `X` in the support of omega) from
    /// the divisor relations. Entries already present for other pairs are
    /// kept.
    pub fn seed_divisor_products(&mut self, gw: &GwData) -> Result<(), GwError> {
        let [mm, wm, ww] = self.divisor_targets(gw);
        let mi = self.index("M")?;
        for (k, v) in mm.iter().enumerate() {
            self.set_piece_sym(k as u32, mi, mi, v.clone())?;
        }
        if let Ok(wi) = self.index("W") {
            for k in 0..3 {
                self.set_piece_sym(k as u32, wi, mi, wm[k].clone())?;
                self.set_piece_sym(k as u32, wi, wi, ww[k].clone())?;
            }
            return Ok(());
        }
        let om = self.omega.clone().expect("validated in new");
        let others: Vec<usize> = (0..self.dim()).filter(|&i| i != mi && !om[i].is_zero()).collect();
        let xi = match others.as_slice() {
            [x] => *x,
            _ => {
                return Err(GwError::InvalidModel(
                    "omega must be supported on M and exactly one other class".into(),
                ))
            }
        };
        let (wx, wmc) = (om[xi].clone(), om[mi].clone());
        let qq = NovikovSeries::var();
        let mut xm = Vec::new();
        for k in 0..3 {
            let v = wm[k].scale(&qq).sub(&mm[k].scale_q(&wmc)).scale_q(&wx.recip());
            self.set_piece_sym(k as u32, xi, mi, v.clone())?;
            xm.push(v);
        }
        for k in 0..3 {
            let v = ww[k]
                .scale(&qq.mul(&qq))
                .sub(&xm[k].scale_q(&(qi(2) * &wx * &wmc)))
                .sub(&mm[k].scale_q(&(&wmc * &wmc)))
                .scale_q(&(&wx * &wx).recip());
            self.set_piece_sym(k as u32, xi, xi, v)?;
        }
        Ok(())
    }

    /// Truncates every table entry.
    pub fn truncate(&self, t: &Truncation) -> Self {
        let mut out = self.clone();
        for v in out.cup.values_mut() {
            *v = v.truncate(t);
        }
        for tab in out.pieces.values_mut() {
            for v in tab.values_mut() {
                *v = v.truncate(t);
            }
        }
        out
    }
}

fn vec_check(name: &str, eq: &str, r: &SeriesVec, names: &[String]) -> Check {
    Check {
        name: name.into(),
        equation: eq.into(),
        status: if r.is_zero() { Status::Pass } else { Status::Fail },
        residual: Some(r.render(names)),
        detail: None,
    }
}

fn uvec_check(name: &str, eq: &str, r: &USeriesVec, names: &[String]) -> Check {
    Check {
        name: name.into(),
        equation: eq.into(),
        status: if r.is_zero() { Status::Pass } else { Status::Fail },
        residual: Some(r.render(names)),
        detail: None,
    }
}

/// Residuals of `M*M = z1 + 4 z2`, `W*M = W.M + d(z1 + 2 z2)` and
/// `W*W = W.W + (q^{-1} d + d^2)(z0 + z1 + z2)`.
pub fn divisor_residuals(model: &CohomologyModel, gw: &GwData) -> [SeriesVec; 3] {
    let (m, w) = (model.m(), model.w());
    let mm = model.quantum_mul(&m, &m).sub(&gw.z1.add(&gw.z2.scale_q(&qi(4))));
    let wm = model
        .quantum_mul(&w, &m)
        .sub(&model.cup(&w, &m))
        .sub(&model.d_q(&gw.z1.add(&gw.z2.scale_q(&qi(2)))));
    let z = gw.z0.add(&gw.z1).add(&gw.z2);
    let ww = model
        .quantum_mul(&w, &w)
        .sub(&model.cup(&w, &w))
        .sub(&model.divisor_operator(&z));
    [mm, wm, ww]
}

pub fn divisor_relations_check(model: &CohomologyModel, gw: &GwData) -> Report {
    let [mm, wm, ww] = divisor_residuals(model, gw);
    let names = model.names();
    let mut rep = Report::new();
    rep.push(vec_check("M*M", "m-ast-m", &mm, names));
    rep.push(vec_check("W*M", "omega-ast-m", &wm, names));
    rep.push(vec_check("W*W", "omega-ast-omega", &ww, names));
    rep
}

/// `x *0 z1 - (x . M) *1 M - (x *1 M) . M`.
pub fn wdvv_check(x: &SeriesVec, model: &CohomologyModel, gw: &GwData) -> SeriesVec {
    let m = model.m();
    model
        .piece(0, x, &gw.z1)
        .sub(&model.piece(1, &model.cup(x, &m), &m))
        .sub(&model.cup(&model.piece(1, x, &m), &m))
}

/// `(1/2) (z1 *1 M)|E`, and, when `z2tilde` is given, the check that it
/// equals `z2tilde|E`.
pub fn relative_z2(model: &CohomologyModel, gw: &GwData) -> (SeriesVec, Option<Check>) {
    let val = model.restrict(&model.piece(1, &gw.z1, &model.m())).scale_q(&q(1, 2));
    let check = gw.z2tilde.as_ref().map(|zt| {
        let r = model.restrict(zt).sub(&val);
        vec_check("relative-z2", "relative-gw", &r, model.names())
    });
    (val, check)
}

/// Solves `q^{-1}[omega] = psi z1 - eta M`.
pub fn solve_psi_eta(model: &CohomologyModel, gw: &GwData) -> Result<(NovikovSeries, NovikovSeries), GwError> {
    let mi = model.index("M")?;
    let w = model.w();
    let pivot = (0..model.dim())
        .find(|&i| i != mi && model.degree(i) == 2 && !gw.z1.get(i).is_zero())
        .ok_or_else(|| GwError::NoSolution("z1 has no nonzero component besides [M]".into()))?;
    let psi = w.get(pivot).div(gw.z1.get(pivot))?;
    let eta = psi.mul(gw.z1.get(mi)).sub(w.get(mi));
    let r = w.sub(&gw.z1.scale(&psi)).add(&model.m().scale(&eta));
    if !r.is_zero() {
        return Err(GwError::NoSolution(format!(
            "q^-1[omega] is not of the form psi z1 - eta M: residual {}",
            r.render(model.names())
        )));
    }
    Ok((psi, eta))
}

/// `D(x) = u d_q x + W *_E x`, with `*_E` realised as `*^(0)`.
pub fn quantum_connection(x: &SeriesVec, model: &CohomologyModel) -> USeriesVec {
    let du = USeriesVec::from_series(&model.d_q(x), 1);
    du.add(&USeriesVec::from_series(&model.piece(0, &model.w(), x), 0))
}

/// The three arguments of `B_eq` in the rewrite of the `u^2 (s.s)` formula:
/// `(lhs, first_line, second_line)` where
/// `lhs = (1/2)(z1 *0 z1 + u z1 *1 M)|E + 2u^2 z2 - 2u^2 z2`,
/// `first_line = (1/2)((z1 . M + u z1) *1 M)|E`,
/// `second_line = ((1/2)(z1 . M) *1 M + u z2tilde)|E`.
pub struct UueqSides {
    pub full: USeriesVec,
    pub lhs: USeriesVec,
    pub first_line: USeriesVec,
    pub second_line: USeriesVec,
}

pub fn uueq_sides(model: &CohomologyModel, gw: &GwData) -> UueqSides {
    let m = model.m();
    let half = q(1, 2);
    let z1 = &gw.z1;
    let z1z1 = model.restrict(&model.piece(0, z1, z1)).scale_q(&half);
    let z1m = model.restrict(&model.piece(1, z1, &m)).scale_q(&half);
    let two_z2 = USeriesVec::from_series(&gw.z2.scale_q(&qi(2)), 2);
    let full = USeriesVec::from_series(&z1z1, 0)
        .add(&USeriesVec::from_series(&z1m, 1))
        .add(&two_z2);
    // s.s = s~(2) + 2 z2 e removes the 2u^2 z2 term
    let lhs = full.sub(&two_z2);
    let cupm = model.cup(z1, &m);
    let first = USeriesVec::from_series(&model.restrict(&model.piece(1, &cupm, &m)).scale_q(&half), 0)
        .add(&USeriesVec::from_series(&z1m, 1));
    let z2t = match &gw.z2tilde {
        Some(zt) => model.restrict(zt),
        None => z1m.clone(),
    };
    let second = USeriesVec::from_series(&model.restrict(&model.piece(1, &cupm, &m)).scale_q(&half), 0)
        .add(&USeriesVec::from_series(&z2t, 1));
    UueqSides { full, lhs, first_line: first, second_line: second }
}

/// Checks the rewrite of the `u^2 (s.s)` formula into the two lines of the
/// `u^2 s~(2)` formula. Requires WDVV for `x = z1` and, if `z2tilde` is
/// given, the relative reduction.
pub fn uueq_rewrite_check(model: &CohomologyModel, gw: &GwData) -> Result<Report, GwError> {
    let w = wdvv_check(&gw.z1, model, gw);
    if !w.is_zero() {
        return Err(GwError::PrerequisiteFailed(format!(
            "wdvv for x = z1 fails: {}",
            w.render(model.names())
        )));
    }
    if let (_, Some(c)) = relative_z2(model, gw) {
        if !c.passed() {
            return Err(GwError::PrerequisiteFailed(format!(
                "relative reduction fails: {}",
                c.residual.unwrap_or_default()
            )));
        }
    }
    let sides = uueq_sides(model, gw);
    let names = model.names();
    let mut rep = Report::new();
    rep.push(uvec_check("uueq.first-line", "more-gw", &sides.lhs.sub(&sides.first_line), names));
    rep.push(uvec_check(
        "uueq.second-line",
        "more-gw",
        &sides.first_line.sub(&sides.second_line),
        names,
    ));
    Ok(rep)
}

#[cfg(test)]
mod tests;
