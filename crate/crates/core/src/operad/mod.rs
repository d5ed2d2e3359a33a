//! Configurations of discs in the unit disc, their gluing, and the
//! Koszul-signed composition of graded multilinear operations.
//!
//! Indices are 0-based throughout: gluing into point `i` replaces it by the
//! points of the inserted configuration, in order, at position `i`.

mod file;
mod ops;

pub use file::{parse_exact, AnyConfiguration, ConfigRecord, DiscRecord, Mode, Num, OperationEntry, OperationRecord};
pub use ops::{compose, koszul_sign, GradedOperation};

use std::fmt::Debug;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::novikov::{qi, Q};

pub const EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("both configurations carry a Z point")]
    ZConflict,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
}

/// Coordinates: exact rationals or floats with tolerance [`EPSILON`].
pub trait Coord: Clone + Debug + PartialEq {
    fn from_q(q: &Q) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `a < b`; in float mode `a < b - eps`.
    fn lt(&self, o: &Self) -> bool;
    /// `a <= b`; in float mode `a <= b + eps`.
    fn le(&self, o: &Self) -> bool;
    /// `(cos, sin)` of `2 pi tau`.
    fn rotation(tau: &Q) -> Result<(Self, Self), OperadError>;
    fn close(&self, o: &Self) -> bool;
    fn render(&self) -> String;
}

impl Coord for Q {
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
    fn le(&self, o: &Self) -> bool {
        self <= o
    }
    fn rotation(tau: &Q) -> Result<(Self, Self), OperadError> {
        let t = frac(tau) * qi(4);
        if !t.is_integer() {
            return Err(OperadError::InvalidInput(format!(
                "rotation by {tau} of a turn is not exact; use float mode"
            )));
        }
        Ok(match t.to_integer().to_i64().unwrap_or(0) {
            0 => (qi(1), qi(0)),
            1 => (qi(0), qi(1)),
            2 => (qi(-1), qi(0)),
            _ => (qi(0), qi(-1)),
        })
    }
    fn close(&self, o: &Self) -> bool {
        self == o
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coord for f64 {
    fn from_q(q: &Q) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn lt(&self, o: &Self) -> bool {
        *self < *o - EPSILON
    }
    fn le(&self, o: &Self) -> bool {
        *self <= *o + EPSILON
    }
    fn rotation(tau: &Q) -> Result<(Self, Self), OperadError> {
        let a = 2.0 * std::f64::consts::PI * frac(tau).to_f64().unwrap_or(0.0);
        Ok((a.cos(), a.sin()))
    }
    fn close(&self, o: &Self) -> bool {
        (self - o).abs() <= EPSILON
    }
    fn render(&self) -> String {
        format!("{self}")
    }
}

/// `tau mod 1` in `[0, 1)`.
pub fn frac(tau: &Q) -> Q {
    tau - tau.floor()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point<F> {
    pub re: F,
    pub im: F,
}

impl<F: Coord> Point<F> {
    pub fn new(re: F, im: F) -> Self {
        Point { re, im }
    }

    fn norm2(&self) -> F {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    fn sub(&self, o: &Self) -> Self {
        Point::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    /// `zeta + r e^{2 pi i tau} p`.
    fn affine(&self, zeta: &Self, r: &F, rot: &(F, F)) -> Self {
        let (c, s) = rot;
        let x = c.mul(&self.re).sub(&s.mul(&self.im));
        let y = s.mul(&self.re).add(&c.mul(&self.im));
        Point::new(zeta.re.add(&r.mul(&x)), zeta.im.add(&r.mul(&y)))
    }

    fn close(&self, o: &Self) -> bool {
        self.re.close(&o.re) && self.im.close(&o.im)
    }

    pub fn render(&self) -> String {
        format!("({}, {})", self.re.render(), self.im.render())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disc<F> {
    pub center: Point<F>,
    pub radius: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscConfiguration<F> {
    pub discs: Vec<Disc<F>>,
    /// Rotation `tau_i` of each disc in turns, taken mod 1.
    pub framings: Option<Vec<Q>>,
    pub z_point: Option<Point<F>>,
    pub is_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validation {
    pub valid: bool,
    pub diagnostics: Vec<String>,
}

impl<F: Coord> DiscConfiguration<F> {
    pub fn new(discs: Vec<Disc<F>>) -> Self {
        DiscConfiguration { discs, framings: None, z_point: None, is_identity: false }
    }

    /// The single disc `zeta = 0`, `r = 1`.
    pub fn identity() -> Self {
        let zero = F::from_q(&qi(0));
        DiscConfiguration {
            discs: vec![Disc { center: Point::new(zero.clone(), zero), radius: F::from_q(&qi(1)) }],
            framings: None,
            z_point: None,
            is_identity: true,
        }
    }

    pub fn with_framings(mut self, f: Vec<Q>) -> Self {
        self.framings = Some(f);
        self
    }

    pub fn with_z(mut self, z: Point<F>) -> Self {
        self.z_point = Some(z);
        self
    }

    pub fn arity(&self) -> usize {
        self.discs.len()
    }

    pub fn framing(&self, i: usize) -> Q {
        self.framings.as_ref().and_then(|f| f.get(i).cloned()).map(|t| frac(&t)).unwrap_or_else(Q::zero)
    }

    pub fn validate(&self) -> Validation {
        let mut diag = Vec::new();
        let zero = F::from_q(&qi(0));
        let one = F::from_q(&qi(1));
        if let Some(f) = &self.framings {
            if f.len() != self.discs.len() {
                diag.push(format!("{} framings for {} discs", f.len(), self.discs.len()));
            }
        }
        if self.is_identity {
            let ok = self.discs.len() == 1
                && self.discs[0].center.re.close(&zero)
                && self.discs[0].center.im.close(&zero)
                && self.discs[0].radius.close(&one);
            if !ok {
                diag.push("identity configuration must be the single disc zeta = 0, r = 1".into());
            }
            if !self.framing(0).is_zero() {
                diag.push("identity configuration carries a nontrivial framing".into());
            }
            if let Some(z) = &self.z_point {
                if !(z.norm2().le(&one) && one.le(&z.norm2())) {
                    diag.push(format!("Z point {} lies inside the identity disc", z.render()));
                }
            }
            return Validation { valid: diag.is_empty(), diagnostics: diag };
        }
        for (i, d) in self.discs.iter().enumerate() {
            if !zero.lt(&d.radius) {
                diag.push(format!("disc {i}: radius {} is not positive", d.radius.render()));
                continue;
            }
            // |c| + r < 1
            let room = one.sub(&d.radius);
            if !(zero.lt(&room) && d.center.norm2().lt(&room.mul(&room))) {
                diag.push(format!("disc {i} is not contained in the open unit disc"));
            }
        }
        for i in 0..self.discs.len() {
            for j in i + 1..self.discs.len() {
                let (a, b) = (&self.discs[i], &self.discs[j]);
                let rr = a.radius.add(&b.radius);
                if !rr.mul(&rr).lt(&a.center.sub(&b.center).norm2()) {
                    diag.push(format!("discs {i} and {j} intersect"));
                }
            }
        }
        if let Some(z) = &self.z_point {
            if !z.norm2().le(&one) {
                diag.push(format!("Z point {} lies outside the closed unit disc", z.render()));
            }
            for (i, d) in self.discs.iter().enumerate() {
                if z.sub(&d.center).norm2().lt(&d.radius.mul(&d.radius)) {
                    diag.push(format!("Z point lies in the interior of disc {i}"));
                }
            }
        }
        Validation { valid: diag.is_empty(), diagnostics: diag }
    }

    /// Approximate equality in float mode, exact in rational mode.
    pub fn close(&self, o: &Self) -> bool {
        self.discs.len() == o.discs.len()
            && self.is_identity == o.is_identity
            && self
                .discs
                .iter()
                .zip(&o.discs)
                .all(|(a, b)| a.center.close(&b.center) && a.radius.close(&b.radius))
            && (0..self.arity()).all(|i| self.framing(i) == o.framing(i))
            && match (&self.z_point, &o.z_point) {
                (None, None) => true,
                (Some(a), Some(b)) => a.close(b),
                _ => false,
            }
    }
}

/// Inserts `c2`, rescaled by `r_{i1}` and rotated by `tau_{i1}`, into disc `i1` of `c1`.
pub fn glue<F: Coord>(c1: &DiscConfiguration<F>, i1: usize, c2: &DiscConfiguration<F>) -> Result<DiscConfiguration<F>, OperadError> {
    for (name, c) in [("first", c1), ("second", c2)] {
        let v = c.validate();
        if !v.valid {
            return Err(OperadError::InvalidInput(format!("{name} configuration: {}", v.diagnostics.join("; "))));
        }
    }
    if i1 >= c1.arity() {
        return Err(OperadError::IndexOutOfRange { index: i1, arity: c1.arity() });
    }
    if c1.z_point.is_some() && c2.z_point.is_some() {
        return Err(OperadError::ZConflict);
    }
    if c2.is_identity {
        return Ok(c1.clone());
    }
    let host = &c1.discs[i1];
    let tau = c1.framing(i1);
    let rot = F::rotation(&tau)?;
    let map = |p: &Point<F>| p.affine(&host.center, &host.radius, &rot);
    let mut discs = Vec::with_capacity(c1.arity() + c2.arity() - 1);
    let mut framings = Vec::with_capacity(discs.capacity());
    for (i, d) in c1.discs.iter().enumerate() {
        if i == i1 {
            for (j, e) in c2.discs.iter().enumerate() {
                discs.push(Disc { center: map(&e.center), radius: host.radius.mul(&e.radius) });
                framings.push(frac(&(c2.framing(j) + &tau)));
            }
        } else {
            discs.push(d.clone());
            framings.push(c1.framing(i));
        }
    }
    let framed = c1.framings.is_some() || c2.framings.is_some();
    Ok(DiscConfiguration {
        discs,
        framings: framed.then_some(framings),
        z_point: c1.z_point.clone().or_else(|| c2.z_point.as_ref().map(map)),
        is_identity: c1.is_identity && c2.is_identity,
    })
}
