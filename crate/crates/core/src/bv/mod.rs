//! Finite-dimensional BV algebras over the Novikov field, connections in the
//! `q`-direction, and the identities relating them.
//!
//! Sign convention for the bracket: `[x2,x1] = (-1)^{|x1||x2|} [x1,x2]`, with
//! `[x1,x2] = Delta(x1 x2) - (Delta x1) x2 - (-1)^{|x1|} x1 Delta x2`.

mod file;
mod presets;

pub use file::{element as element_from_record, BvModelFile, BvPreset, ElementRecord, LinearRecord, ProductRecord};
pub use presets::{odd_derivation, polyvector, polyvector_affine, polyvector_xi_defect, scalar_shadow, synthetic_bs};

use std::cell::OnceCell;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::SeriesVec;
use crate::novikov::{qi, NovikovSeries, SeriesError, Q};
use crate::ode::{OdeError, OdeProblem};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BvError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error("unknown basis element or element `{0}`")]
    UnknownElement(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("prerequisite failed: {0}")]
    PrerequisiteFailed(String),
}

pub(crate) fn sign(n: i32) -> Q {
    if n.rem_euclid(2) == 0 {
        qi(1)
    } else {
        qi(-1)
    }
}

type Table = BTreeMap<(usize, usize), SeriesVec>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BVModel {
    names: Vec<String>,
    degrees: Vec<i32>,
    unit: usize,
    product: Table,
    delta: Vec<SeriesVec>,
    supplied_bracket: Option<Table>,
    elements: BTreeMap<String, SeriesVec>,
    derived: OnceCell<Vec<Vec<SeriesVec>>>,
}

impl BVModel {
    /// A model with the given basis, unit products `e x = x e = x`, all
    /// other products zero and `Delta = 0`.
    pub fn new(names: Vec<String>, degrees: Vec<i32>, unit: usize) -> Result<Self, BvError> {
        let n = names.len();
        if degrees.len() != n {
            return Err(BvError::InvalidModel("names and degrees differ in length".into()));
        }
        if unit >= n || degrees[unit] != 0 {
            return Err(BvError::InvalidModel("the unit must be a basis element of degree 0".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(BvError::InvalidModel(format!("duplicate basis name `{a}`")));
            }
        }
        let mut product = Table::new();
        for i in 0..n {
            product.insert((unit, i), SeriesVec::basis(n, i));
            product.insert((i, unit), SeriesVec::basis(n, i));
        }
        Ok(BVModel {
            names,
            degrees,
            unit,
            product,
            delta: vec![SeriesVec::zero(n); n],
            supplied_bracket: None,
            elements: BTreeMap::new(),
            derived: OnceCell::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn index(&self, name: &str) -> Result<usize, BvError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| BvError::UnknownElement(name.into()))
    }

    pub fn basis(&self, i: usize) -> SeriesVec {
        SeriesVec::basis(self.dim(), i)
    }

    pub fn unit(&self) -> SeriesVec {
        self.basis(self.unit)
    }

    pub fn zero(&self) -> SeriesVec {
        SeriesVec::zero(self.dim())
    }

    pub fn element(&self, name: &str) -> Result<SeriesVec, BvError> {
        if let Some(v) = self.elements.get(name) {
            return Ok(v.clone());
        }
        Ok(self.basis(self.index(name)?))
    }

    pub fn set_element(&mut self, name: &str, v: SeriesVec) {
        self.elements.insert(name.to_string(), v);
    }

    pub fn elements(&self) -> &BTreeMap<String, SeriesVec> {
        &self.elements
    }

    fn invalidate(&mut self) {
        self.derived = OnceCell::new();
    }

    /// Sets `b_i b_j` and `b_j b_i = (-1)^{|i||j|} b_i b_j`.
    pub fn set_product(&mut self, i: usize, j: usize, v: SeriesVec) {
        let s = sign(self.degrees[i] * self.degrees[j]);
        self.product.insert((j, i), v.scale_q(&s));
        self.product.insert((i, j), v);
        self.invalidate();
    }

    /// Sets `b_i b_j` alone.
    pub fn set_product_entry(&mut self, i: usize, j: usize, v: SeriesVec) {
        self.product.insert((i, j), v);
        self.invalidate();
    }

    pub fn set_delta(&mut self, i: usize, v: SeriesVec) {
        self.delta[i] = v;
        self.invalidate();
    }

    /// Freezes the current derived bracket as a supplied table.
    pub fn freeze_bracket(&mut self) {
        let n = self.dim();
        let mut t = Table::new();
        for i in 0..n {
            for j in 0..n {
                t.insert((i, j), self.derived_basis(i, j).clone());
            }
        }
        self.supplied_bracket = Some(t);
    }

    pub fn set_bracket_entry(&mut self, i: usize, j: usize, v: SeriesVec) {
        self.supplied_bracket.get_or_insert_with(Table::new).insert((i, j), v);
    }

    pub fn has_supplied_bracket(&self) -> bool {
        self.supplied_bracket.is_some()
    }

    pub fn render(&self, x: &SeriesVec) -> String {
        x.render(&self.names)
    }

    /// `Some(d)` for a nonzero homogeneous element of degree `d`, `None` for zero.
    pub fn homogeneous_degree(&self, x: &SeriesVec) -> Result<Option<i32>, BvError> {
        let mut d = None;
        for i in x.support() {
            match d {
                None => d = Some(self.degrees[i]),
                Some(e) if e != self.degrees[i] => {
                    return Err(BvError::DegreeMismatch(format!("{} is not homogeneous", self.render(x))))
                }
                _ => {}
            }
        }
        Ok(d)
    }

    fn bilinear(&self, x: &SeriesVec, y: &SeriesVec, f: impl Fn(usize, usize) -> Option<SeriesVec>) -> SeriesVec {
        let mut out = self.zero();
        let ys: Vec<usize> = y.stored().collect();
        for i in x.stored() {
            for &j in &ys {
                if let Some(v) = f(i, j) {
                    out = out.add(&v.scale(&x.get(i).mul(y.get(j))));
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        self.bilinear(x, y, |i, j| self.product.get(&(i, j)).cloned())
    }

    pub fn delta(&self, x: &SeriesVec) -> SeriesVec {
        let mut out = self.zero();
        for i in x.stored() {
            out = out.add(&self.delta[i].scale(x.get(i)));
        }
        out
    }

    fn derived_basis(&self, i: usize, j: usize) -> &SeriesVec {
        &self.derived.get_or_init(|| {
            let n = self.dim();
            (0..n)
                .map(|i| (0..n).map(|j| self.derived_formula(&self.basis(i), self.degrees[i], &self.basis(j))).collect())
                .collect()
        })[i][j]
    }

    /// `Delta(x1 x2) - (Delta x1) x2 - (-1)^{|x1|} x1 Delta x2`.
    fn derived_formula(&self, x1: &SeriesVec, d1: i32, x2: &SeriesVec) -> SeriesVec {
        self.delta(&self.mul(x1, x2))
            .sub(&self.mul(&self.delta(x1), x2))
            .sub(&self.mul(x1, &self.delta(x2)).scale_q(&sign(d1)))
    }

    /// The bracket derived from `Delta`, extended bilinearly.
    pub fn derived_bracket(&self, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        self.bilinear(x, y, |i, j| Some(self.derived_basis(i, j).clone()))
    }

    /// The supplied bracket if there is one, else the derived bracket.
    pub fn bracket(&self, x: &SeriesVec, y: &SeriesVec) -> SeriesVec {
        match &self.supplied_bracket {
            Some(t) => self.bilinear(x, y, |i, j| t.get(&(i, j)).cloned()),
            None => self.derived_bracket(x, y),
        }
    }

    /// `[x1,x2]^{-1} = [x1,x2] + (Delta x1) x2`.
    pub fn modified_bracket(&self, x1: &SeriesVec, x2: &SeriesVec) -> SeriesVec {
        self.bracket(x1, x2).add(&self.mul(&self.delta(x1), x2))
    }

    pub fn truncate(&self, t: &crate::novikov::Truncation) -> Self {
        let tr = |m: &Table| m.iter().map(|(k, v)| (*k, v.truncate(t))).collect::<Table>();
        BVModel {
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            unit: self.unit,
            product: tr(&self.product),
            delta: self.delta.iter().map(|v| v.truncate(t)).collect(),
            supplied_bracket: self.supplied_bracket.as_ref().map(tr),
            elements: self.elements.iter().map(|(k, v)| (k.clone(), v.truncate(t))).collect(),
            derived: OnceCell::new(),
        }
    }
}

/// `nabla x = d_q x + L x` with `L` a matrix over the Novikov field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    /// `L(b_i)`.
    pub linear: Vec<SeriesVec>,
}

impl Connection {
    /// `nabla = d_q`.
    pub fn trivial(n: usize) -> Self {
        Connection { linear: vec![SeriesVec::zero(n); n] }
    }

    pub fn apply(&self, x: &SeriesVec) -> SeriesVec {
        let mut out = x.d_q();
        for i in x.stored() {
            out = out.add(&self.linear[i].scale(x.get(i)));
        }
        out
    }

    /// Adds the linear map `f` to `L`.
    fn plus(&self, f: impl Fn(usize) -> SeriesVec) -> Self {
        Connection { linear: self.linear.iter().enumerate().map(|(i, l)| l.add(&f(i))).collect() }
    }
}

/// `nabla^c x = nabla x + c a x`.
pub fn nabla_c(nabla: &Connection, a: &SeriesVec, c: i64, model: &BVModel) -> Connection {
    let c = qi(c);
    nabla.plus(|i| model.mul(a, &model.basis(i)).scale_q(&c))
}

/// `nabla~ x = nabla x - [alpha, x]` and `a~ = a + Delta alpha`, for `alpha` of degree 1.
pub fn gauge_change(
    nabla: &Connection,
    alpha: &SeriesVec,
    a: &SeriesVec,
    model: &BVModel,
) -> Result<(Connection, SeriesVec), BvError> {
    if let Some(d) = model.homogeneous_degree(alpha)? {
        if d != 1 {
            return Err(BvError::DegreeMismatch(format!("alpha has degree {d}, expected 1")));
        }
    }
    let nt = nabla.plus(|i| model.bracket(alpha, &model.basis(i)).neg());
    Ok((nt, a.add(&model.delta(alpha))))
}

struct Collector<'a> {
    model: &'a BVModel,
    first: Option<(String, SeriesVec)>,
    count: usize,
}

impl<'a> Collector<'a> {
    fn new(model: &'a BVModel) -> Self {
        Collector { model, first: None, count: 0 }
    }

    fn push(&mut self, label: impl FnOnce() -> String, r: SeriesVec) {
        self.count += 1;
        if self.first.is_none() && !r.is_zero() {
            self.first = Some((label(), r));
        }
    }

    fn check(self, name: &str, equation: &str) -> Check {
        match self.first {
            None => Check::boolean(name, equation, true, format!("{} cases", self.count)),
            Some((label, r)) => {
                let mut c = Check::boolean(name, equation, false, format!("first nonzero at {label}"));
                c.residual = Some(self.model.render(&r));
                c
            }
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

/// Every structural identity on all basis pairs and triples.
pub fn check_bv_axioms(model: &BVModel) -> Report {
    let n = model.dim();
    let b = |i| model.basis(i);
    let d = |i: usize| model.degree(i);
    let nm = |i: usize| model.names[i].clone();
    let e = model.unit();
    let mut rep = Report::new();

    let mut grading = Collector::new(model);
    let off = |v: &SeriesVec, want: i32| {
        let mut r = model.zero();
        for k in v.support() {
            if model.degree(k) != want {
                r.0[k] = v.get(k).clone();
            }
        }
        r
    };
    for (i, j) in pairs(n) {
        grading.push(|| format!("{} * {}", nm(i), nm(j)), off(&model.mul(&b(i), &b(j)), d(i) + d(j)));
        grading.push(|| format!("[{}, {}]", nm(i), nm(j)), off(&model.bracket(&b(i), &b(j)), d(i) + d(j) - 1));
    }
    for i in 0..n {
        grading.push(|| format!("Delta {}", nm(i)), off(&model.delta(&b(i)), d(i) - 1));
    }
    rep.push(grading.check("grading", "grading"));

    let mut comm = Collector::new(model);
    let mut unit = Collector::new(model);
    for (i, j) in pairs(n) {
        let r = model.mul(&b(j), &b(i)).sub(&model.mul(&b(i), &b(j)).scale_q(&sign(d(i) * d(j))));
        comm.push(|| format!("({}, {})", nm(i), nm(j)), r);
    }
    for i in 0..n {
        unit.push(|| nm(i), model.mul(&e, &b(i)).sub(&b(i)));
    }
    rep.push(comm.check("commutativity", "graded-commutative"));
    let mut assoc = Collector::new(model);
    for (i, j, k) in triples(n) {
        let r = model.mul(&model.mul(&b(i), &b(j)), &b(k)).sub(&model.mul(&b(i), &model.mul(&b(j), &b(k))));
        assoc.push(|| format!("({}, {}, {})", nm(i), nm(j), nm(k)), r);
    }
    rep.push(assoc.check("associativity", "associative"));
    rep.push(unit.check("unit", "unit"));

    rep.push(Check::from_residual("delta-e", "delta-e", &ElementResidual(model, model.delta(&e))));
    let mut dd = Collector::new(model);
    for i in 0..n {
        dd.push(|| nm(i), model.delta(&model.delta(&b(i))));
    }
    rep.push(dd.check("delta-squared", "delta-squared"));

    let mut db = Collector::new(model);
    if model.has_supplied_bracket() {
        for (i, j) in pairs(n) {
            db.push(|| format!("({}, {})", nm(i), nm(j)), model.bracket(&b(i), &b(j)).sub(&model.derived_bracket(&b(i), &b(j))));
        }
        rep.push(db.check("delta-bracket", "delta-bracket"));
    } else {
        rep.push(Check::boolean("delta-bracket", "delta-bracket", true, "bracket derived from Delta"));
    }

    let br = |x: &SeriesVec, y: &SeriesVec| model.bracket(x, y);
    let mut anti = Collector::new(model);
    let mut ideal = Collector::new(model);
    let mut db2 = Collector::new(model);
    for (i, j) in pairs(n) {
        anti.push(
            || format!("({}, {})", nm(i), nm(j)),
            br(&b(j), &b(i)).sub(&br(&b(i), &b(j)).scale_q(&sign(d(i) * d(j)))),
        );
        let r = model
            .delta(&br(&b(i), &b(j)))
            .add(&br(&model.delta(&b(i)), &b(j)))
            .add(&br(&b(i), &model.delta(&b(j))).scale_q(&sign(d(i))));
        db2.push(|| format!("({}, {})", nm(i), nm(j)), r);
    }
    for i in 0..n {
        ideal.push(|| nm(i), br(&e, &b(i)));
    }
    rep.push(anti.check("antisymmetry", "antisymmetry"));

    let mut der = Collector::new(model);
    let mut jac = Collector::new(model);
    for (i, j, k) in triples(n) {
        let (x1, x2, x3) = (b(i), b(j), b(k));
        let (d1, d2, d3) = (d(i), d(j), d(k));
        let label = || format!("({}, {}, {})", nm(i), nm(j), nm(k));
        let r = br(&x1, &model.mul(&x2, &x3))
            .sub(&model.mul(&br(&x1, &x2), &x3))
            .sub(&model.mul(&x2, &br(&x1, &x3)).scale_q(&sign((d1 + 1) * d2)));
        der.push(label, r);
        let r = br(&x1, &br(&x2, &x3))
            .scale_q(&sign(d1))
            .add(&br(&x2, &br(&x3, &x1)).scale_q(&sign(d1 * (d2 + d3) + d2)))
            .add(&br(&x3, &br(&x1, &x2)).scale_q(&sign(d3 * (d1 + d2 + 1))));
        jac.push(label, r);
    }
    rep.push(der.check("derivation-bracket", "derivation-bracket"));
    rep.push(jac.check("jacobi", "jacobi"));
    rep.push(ideal.check("e-is-ideal", "e-is-ideal"));
    rep.push(db2.check("delta-bracket-2", "delta-bracket-2"));
    rep
}

/// `[x1,x2]^{-1} = [x1,x2] + (Delta x1) x2` and
/// `[x1, Delta x2]^{-1} = -(-1)^{|x1|} Delta [x1,x2]^{-1}` on basis pairs.
pub fn check_modified_bracket(model: &BVModel) -> Report {
    let n = model.dim();
    let b = |i| model.basis(i);
    let nm = |i: usize| model.names[i].clone();
    let mut one = Collector::new(model);
    let mut bv1 = Collector::new(model);
    for (i, j) in pairs(n) {
        let label = || format!("({}, {})", nm(i), nm(j));
        let m = model.modified_bracket(&b(i), &b(j));
        one.push(label, m.sub(&model.bracket(&b(i), &b(j))).sub(&model.mul(&model.delta(&b(i)), &b(j))));
        let lhs = model.modified_bracket(&b(i), &model.delta(&b(j)));
        bv1.push(label, lhs.add(&model.delta(&m).scale_q(&sign(model.degree(i)))));
    }
    let mut rep = Report::new();
    rep.push(one.check("bracket-1", "bracket-1"));
    rep.push(bv1.check("bracket-bv-1", "bracket-bv-1"));
    rep
}

/// An element with the model's basis names, for reports.
struct ElementResidual<'a>(&'a BVModel, SeriesVec);

impl crate::report::Residual for ElementResidual<'_> {
    fn vanishes(&self) -> bool {
        self.1.is_zero()
    }
    fn render(&self) -> String {
        self.0.render(&self.1)
    }
}

fn element_check(name: &str, equation: &str, model: &BVModel, r: SeriesVec) -> Check {
    Check::from_residual(name, equation, &ElementResidual(model, r))
}

/// Product and bracket Leibniz rules of `nabla` on all basis pairs.
pub fn check_leibniz(nabla: &Connection, model: &BVModel) -> Report {
    let n = model.dim();
    let b = |i| model.basis(i);
    let nm = |i: usize| model.names[i].clone();
    let mut prod = Collector::new(model);
    let mut brk = Collector::new(model);
    for (i, j) in pairs(n) {
        let (x2, x1) = (b(i), b(j));
        let label = || format!("({}, {})", nm(i), nm(j));
        let r = nabla
            .apply(&model.mul(&x2, &x1))
            .sub(&model.mul(&nabla.apply(&x2), &x1))
            .sub(&model.mul(&x2, &nabla.apply(&x1)));
        prod.push(label, r);
        let r = nabla
            .apply(&model.bracket(&x2, &x1))
            .sub(&model.bracket(&nabla.apply(&x2), &x1))
            .sub(&model.bracket(&x2, &nabla.apply(&x1)));
        brk.push(label, r);
    }
    let mut rep = Report::new();
    rep.push(prod.check("leibniz.product", "nabla-derivation"));
    rep.push(brk.check("leibniz.bracket", "nabla-derivation-2"));
    rep
}

/// `nabla Delta x - Delta nabla x + [a, x]`.
pub fn delta_nabla_residual(nabla: &Connection, a: &SeriesVec, model: &BVModel, x: &SeriesVec) -> SeriesVec {
    nabla
        .apply(&model.delta(x))
        .sub(&model.delta(&nabla.apply(x)))
        .add(&model.bracket(a, x))
}

pub fn check_delta_nabla(nabla: &Connection, a: &SeriesVec, model: &BVModel) -> Report {
    let mut c = Collector::new(model);
    for i in 0..model.dim() {
        c.push(|| model.names[i].clone(), delta_nabla_residual(nabla, a, model, &model.basis(i)));
    }
    let mut rep = Report::new();
    rep.push(c.check("delta-nabla", "delta-nabla"));
    rep
}

/// `nabla^{-1} Delta x - Delta nabla^{-1} x`.
pub fn minus1_delta_residual(nabla: &Connection, a: &SeriesVec, model: &BVModel, x: &SeriesVec) -> SeriesVec {
    let nm1 = nabla_c(nabla, a, -1, model);
    nm1.apply(&model.delta(x)).sub(&model.delta(&nm1.apply(x)))
}

/// Requires the `delta-nabla` identity. Reports the agreement of
/// `nabla^{-1} Delta - Delta nabla^{-1}` with `(Delta a) x`, and whether it vanishes.
pub fn check_minus1_delta(nabla: &Connection, a: &SeriesVec, model: &BVModel) -> Report {
    let mut rep = Report::new();
    let pre = check_delta_nabla(nabla, a, model);
    if !pre.all_pass() {
        let err = BvError::PrerequisiteFailed("delta-nabla does not hold".into());
        rep.push(Check::error("minus1-delta.formula", "-1-connection", &err));
        rep.push(Check::error("minus1-delta", "delta-a-is-zero", &err));
        return rep;
    }
    let da = model.delta(a);
    let mut formula = Collector::new(model);
    let mut vanish = Collector::new(model);
    for i in 0..model.dim() {
        let x = model.basis(i);
        let r = minus1_delta_residual(nabla, a, model, &x);
        formula.push(|| model.names[i].clone(), r.sub(&model.mul(&da, &x)));
        vanish.push(|| model.names[i].clone(), r);
    }
    rep.push(formula.check("minus1-delta.formula", "-1-connection"));
    rep.push(vanish.check("minus1-delta", "delta-a-is-zero").with_detail(format!("Delta a = {}", model.render(&da))));
    rep
}

/// `nabla~^{-1} x - nabla^{-1} x + Delta(alpha x) + alpha Delta x` on every basis element.
pub fn check_minus1_ambiguity(
    nabla: &Connection,
    alpha: &SeriesVec,
    a: &SeriesVec,
    model: &BVModel,
) -> Result<Report, BvError> {
    let (nt, at) = gauge_change(nabla, alpha, a, model)?;
    let old = nabla_c(nabla, a, -1, model);
    let new = nabla_c(&nt, &at, -1, model);
    let mut c = Collector::new(model);
    for i in 0..model.dim() {
        let x = model.basis(i);
        let r = new
            .apply(&x)
            .sub(&old.apply(&x))
            .add(&model.delta(&model.mul(alpha, &x)))
            .add(&model.mul(alpha, &model.delta(&x)));
        c.push(|| model.names[i].clone(), r);
    }
    let mut rep = Report::new();
    rep.push(c.check("minus1-ambiguity", "-1-ambiguity"));
    Ok(rep)
}

/// Gauge-changes `(nabla, a)` by `alpha` and re-runs the `delta-nabla`,
/// bracket-Leibniz and `-1`-ambiguity checks.
pub fn check_gauge(nabla: &Connection, alpha: &SeriesVec, a: &SeriesVec, model: &BVModel) -> Result<Report, BvError> {
    let (nt, at) = gauge_change(nabla, alpha, a, model)?;
    let mut rep = Report::new();
    for mut c in check_delta_nabla(&nt, &at, model).checks {
        c.name = "gauge.delta-nabla".into();
        rep.push(c);
    }
    if let Some(mut c) = check_leibniz(&nt, model).get("leibniz.bracket").cloned() {
        c.name = "gauge.leibniz.bracket".into();
        rep.push(c);
    }
    rep.extend(check_minus1_ambiguity(nabla, alpha, a, model)?);
    Ok(rep)
}

fn four_z2_psi(prob: &OdeProblem) -> NovikovSeries {
    prob.z2.mul(&prob.psi).scale(&qi(4))
}

/// `nabla s - psi s s + eta s + 4 z2 psi e`.
pub fn bs_residual(nabla: &Connection, s: &SeriesVec, prob: &OdeProblem, model: &BVModel) -> SeriesVec {
    nabla
        .apply(s)
        .sub(&model.mul(s, s).scale(&prob.psi))
        .add(&s.scale(&prob.eta))
        .add(&model.unit().scale(&four_z2_psi(prob)))
}

/// `a = -psi s`.
pub fn a_from_s(s: &SeriesVec, prob: &OdeProblem) -> SeriesVec {
    s.scale(&prob.psi).neg()
}

/// `nabla a + a a + (eta - psi'/psi) a - 4 z2 psi^2 e`.
pub fn nonlinear_a_residual(
    nabla: &Connection,
    a: &SeriesVec,
    prob: &OdeProblem,
    model: &BVModel,
) -> Result<SeriesVec, BvError> {
    let psi2 = prob.psi.mul(&prob.psi);
    Ok(nabla
        .apply(a)
        .add(&model.mul(a, a))
        .add(&a.scale(&prob.friction()?))
        .sub(&model.unit().scale(&prob.z2.mul(&psi2).scale(&qi(4)))))
}

/// `nabla^c s + (c-1) psi s s + eta s + 4 z2 psi e` with `a = -psi s`.
pub fn nablac_s_residual(nabla: &Connection, s: &SeriesVec, c: i64, prob: &OdeProblem, model: &BVModel) -> SeriesVec {
    let nc = nabla_c(nabla, &a_from_s(s, prob), c, model);
    nc.apply(s)
        .add(&model.mul(s, s).scale(&prob.psi).scale_q(&qi(c - 1)))
        .add(&s.scale(&prob.eta))
        .add(&model.unit().scale(&four_z2_psi(prob)))
}

/// `nabla^c e + c psi s` with `a = -psi s`.
pub fn nabla_c_e_residual(nabla: &Connection, s: &SeriesVec, c: i64, prob: &OdeProblem, model: &BVModel) -> SeriesVec {
    let nc = nabla_c(nabla, &a_from_s(s, prob), c, model);
    nc.apply(&model.unit()).add(&s.scale(&prob.psi).scale_q(&qi(c)))
}

/// `nabla^1 nabla^1 e + (eta - psi'/psi) nabla^1 e - 4 z2 psi^2 e` with `a = -psi s`.
pub fn second_order_on_e(
    nabla: &Connection,
    s: &SeriesVec,
    prob: &OdeProblem,
    model: &BVModel,
) -> Result<SeriesVec, BvError> {
    let n1 = nabla_c(nabla, &a_from_s(s, prob), 1, model);
    let once = n1.apply(&model.unit());
    let psi2 = prob.psi.mul(&prob.psi);
    Ok(n1
        .apply(&once)
        .add(&once.scale(&prob.friction()?))
        .sub(&model.unit().scale(&prob.z2.mul(&psi2).scale(&qi(4)))))
}

/// The Borman-Sheridan equation and its reformulations for `a = -psi s`.
pub fn bs_report(nabla: &Connection, s: &SeriesVec, prob: &OdeProblem, model: &BVModel) -> Report {
    let mut rep = Report::new();
    rep.push(element_check("bs", "nabla-s-squared", model, bs_residual(nabla, s, prob, model)));
    let a = a_from_s(s, prob);
    match nonlinear_a_residual(nabla, &a, prob, model) {
        Ok(r) => rep.push(element_check("nonlinear-a", "nonlinear-a", model, r)),
        Err(e) => rep.push(Check::error("nonlinear-a", "nonlinear-a", e)),
    }
    for c in [-1, 0, 1] {
        let r = nablac_s_residual(nabla, s, c, prob, model);
        rep.push(element_check(&format!("nablac-s[c={c}]"), "nablac-s", model, r));
    }
    let r = nabla1_2_residual(nabla, s, prob, model);
    rep.push(element_check("nabla1-2", "nabla1-2", model, r));
    for c in [-1, 0, 1] {
        let r = nabla_c_e_residual(nabla, s, c, prob, model);
        rep.push(element_check(&format!("nabla-c-e[c={c}]"), "nabla-c-e", model, r));
    }
    rep
}

/// `nabla^1 s + eta s + 4 z2 psi e`.
pub fn nabla1_2_residual(nabla: &Connection, s: &SeriesVec, prob: &OdeProblem, model: &BVModel) -> SeriesVec {
    let n1 = nabla_c(nabla, &a_from_s(s, prob), 1, model);
    n1.apply(s).add(&s.scale(&prob.eta)).add(&model.unit().scale(&four_z2_psi(prob)))
}

/// Requires `bs` and `nabla-c-e`.
pub fn second_order_report(nabla: &Connection, s: &SeriesVec, prob: &OdeProblem, model: &BVModel) -> Report {
    let mut rep = Report::new();
    let pre = bs_residual(nabla, s, prob, model).is_zero()
        && [-1, 0, 1].iter().all(|&c| nabla_c_e_residual(nabla, s, c, prob, model).is_zero());
    if !pre {
        let err = BvError::PrerequisiteFailed("bs or nabla-c-e does not hold".into());
        rep.push(Check::error("2nd-order", "2nd-order-2", err));
        return rep;
    }
    match second_order_on_e(nabla, s, prob, model) {
        Ok(r) => rep.push(element_check("2nd-order", "2nd-order-2", model, r)),
        Err(e) => rep.push(Check::error("2nd-order", "2nd-order-2", e)),
    }
    rep
}

/// `Delta k = 0` and `[k,x] = [k,x]^{-1}` on the basis; they differ by `(Delta k) x`.
pub fn r_endomorphism_check(model: &BVModel, k: &SeriesVec) -> Report {
    let mut rep = Report::new();
    rep.push(element_check("delta-k", "delta-k", model, model.delta(k)));
    let mut c = Collector::new(model);
    for i in 0..model.dim() {
        let x = model.basis(i);
        c.push(|| model.names[i].clone(), model.modified_bracket(k, &x).sub(&model.bracket(k, &x)));
    }
    rep.push(c.check("r-k-1", "r-k-1"));
    rep
}

/// `[k, x]` for the `r` endomorphism.
pub fn r_endomorphism(model: &BVModel, k: &SeriesVec, x: &SeriesVec) -> SeriesVec {
    model.bracket(k, x)
}
