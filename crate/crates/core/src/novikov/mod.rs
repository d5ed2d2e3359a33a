//! Truncated Novikov series `sum c_i q^{d_i}` with exact rational exponents
//! and coefficients.
//!
//! A series stores the finitely many terms below its truncation order `T`;
//! everything at exponent `>= T` is unknown. Exact values (polynomials,
//! Laurent polynomials) carry `T = +inf`. Every operation propagates the
//! truncation so that a stored term is always a correct term.

mod text;
mod useries;

pub use text::{parse_series, rational, SeriesRecord, TermRecord};
pub(crate) use text::parse_rational;
pub use useries::USeries;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for coefficients and exponents.
pub type Q = BigRational;

/// `n/d` as an exact rational.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series with no terms below its truncation")]
    ZeroDivision,
    #[error("insufficient precision: need terms below q^{needed}, series known only below q^{available}")]
    InsufficientPrecision { needed: String, available: String },
    #[error("inverse of an exact non-monomial series does not terminate; give the input a finite truncation")]
    UnboundedInverse,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponent bound below which a series is exactly known.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Truncation {
    At(Q),
    Infinite,
}

impl Truncation {
    pub fn at(e: Q) -> Self {
        Truncation::At(e)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Truncation::At(_))
    }

    pub fn value(&self) -> Option<&Q> {
        match self {
            Truncation::At(t) => Some(t),
            Truncation::Infinite => None,
        }
    }

    /// Shift by a rational; `inf + x = inf`.
    pub fn shifted(&self, by: &Q) -> Self {
        match self {
            Truncation::At(t) => Truncation::At(t + by),
            Truncation::Infinite => Truncation::Infinite,
        }
    }

    /// Sum of two bounds, used for valuations (which may be infinite too).
    pub fn plus(&self, other: &Truncation) -> Self {
        match (self, other) {
            (Truncation::At(a), Truncation::At(b)) => Truncation::At(a + b),
            _ => Truncation::Infinite,
        }
    }

    /// True iff `e` lies strictly below the bound.
    pub fn exceeds(&self, e: &Q) -> bool {
        match self {
            Truncation::At(t) => e < t,
            Truncation::Infinite => true,
        }
    }
}

impl PartialOrd for Truncation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Truncation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Truncation::At(a), Truncation::At(b)) => a.cmp(b),
            (Truncation::At(_), Truncation::Infinite) => Ordering::Less,
            (Truncation::Infinite, Truncation::At(_)) => Ordering::Greater,
            (Truncation::Infinite, Truncation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truncation::At(t) => write!(f, "{t}"),
            Truncation::Infinite => write!(f, "inf"),
        }
    }
}

/// A truncated Novikov series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NovikovSeries {
    terms: BTreeMap<Q, Q>,
    trunc: Truncation,
}

impl Default for NovikovSeries {
    fn default() -> Self {
        Self::zero()
    }
}

impl NovikovSeries {
    /// Exact zero (truncation `+inf`).
    pub fn zero() -> Self {
        NovikovSeries { terms: BTreeMap::new(), trunc: Truncation::Infinite }
    }

    /// `O(q^t)`: nothing known except that all terms below `t` vanish.
    pub fn big_o(t: Q) -> Self {
        NovikovSeries { terms: BTreeMap::new(), trunc: Truncation::At(t) }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, Q::zero())
    }

    /// The exact variable `q`.
    pub fn var() -> Self {
        Self::monomial(Q::one(), Q::one())
    }

    /// `c q^e`, exact.
    pub fn monomial(c: Q, e: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        NovikovSeries { terms, trunc: Truncation::Infinite }
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed; zero coefficients and terms at or beyond the
    /// truncation are dropped.
    pub fn from_terms<I>(terms: I, trunc: Truncation) -> Self
    where
        I: IntoIterator<Item = (Q, Q)>,
    {
        let mut map: BTreeMap<Q, Q> = BTreeMap::new();
        for (e, c) in terms {
            if !trunc.exceeds(&e) {
                continue;
            }
            *map.entry(e).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        NovikovSeries { terms: map, trunc }
    }

    /// Convenience constructor from small integer-ratio data:
    /// `[(exp_num, exp_den, coeff_num, coeff_den)]`.
    pub fn from_small(terms: &[(i64, i64, i64, i64)], trunc: Option<(i64, i64)>) -> Self {
        let trunc = match trunc {
            Some((n, d)) => Truncation::At(q(n, d)),
            None => Truncation::Infinite,
        };
        Self::from_terms(terms.iter().map(|&(en, ed, cn, cd)| (q(en, ed), q(cn, cd))), trunc)
    }

    /// Exact polynomial `sum c_i q^i` from integer coefficients.
    pub fn poly(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs.iter().enumerate().map(|(i, &c)| (qi(i as i64), qi(c))),
            Truncation::Infinite,
        )
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Q, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Q) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// No stored terms: zero as far as it is known.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exactly zero, including beyond any truncation.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.trunc == Truncation::Infinite
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == Truncation::Infinite
    }

    /// Lowest stored term.
    pub fn leading(&self) -> Option<(&Q, &Q)> {
        self.terms.iter().next()
    }

    /// Valuation as a bound: the lowest exponent, or the truncation when no
    /// term is known (which is `+inf` for exact zero).
    pub fn valuation(&self) -> Truncation {
        match self.terms.keys().next() {
            Some(e) => Truncation::At(e.clone()),
            None => self.trunc.clone(),
        }
    }

    /// Lowers the truncation to `min(T, t)`, dropping terms beyond it.
    pub fn truncate(&self, t: &Truncation) -> Self {
        let trunc = self.trunc.clone().min(t.clone());
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| trunc.exceeds(e))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        NovikovSeries { terms, trunc }
    }

    pub fn truncate_at(&self, t: Q) -> Self {
        self.truncate(&Truncation::At(t))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return NovikovSeries { terms: BTreeMap::new(), trunc: self.trunc.clone() };
        }
        NovikovSeries {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: &Q) -> Self {
        NovikovSeries {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
            trunc: self.trunc.shifted(k),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.clone().min(other.trunc.clone());
        let it = self.terms.iter().chain(other.terms.iter()).map(|(e, c)| (e.clone(), c.clone()));
        Self::from_terms(it, trunc)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        NovikovSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            trunc: self.trunc.clone(),
        }
    }

    /// Cauchy product. The result is known below
    /// `min(T_a + val(b), T_b + val(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self
            .trunc
            .plus(&other.valuation())
            .min(other.trunc.plus(&self.valuation()));
        let mut map: BTreeMap<Q, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if !trunc.exceeds(&e) {
                    // exponents of `other` are increasing
                    break;
                }
                *map.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        map.retain(|_, c| !c.is_zero());
        NovikovSeries { terms: map, trunc }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse. Known below `T - 2 val(a)`.
    ///
    /// A monomial inverts exactly. Any other exact input has a
    /// non-terminating inverse and is rejected; use [`Self::invert_to`].
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let (v, c) = self.leading().ok_or(SeriesError::ZeroDivision)?;
        let (v, c) = (v.clone(), c.clone());
        if self.trunc == Truncation::Infinite {
            if self.terms.len() == 1 {
                return Ok(Self::monomial(c.recip(), -v));
            }
            return Err(SeriesError::UnboundedInverse);
        }
        // a = c q^v (1 + r), r with positive exponents, known to relative order P
        let rel = self.trunc.shifted(&-v.clone());
        let unit = self.shift(&-v.clone()).scale(&c.recip());
        let r = unit.sub(&Self::one());
        let minus_r = r.neg();
        let mut sum = Self::one().truncate(&rel);
        let mut power = Self::one();
        loop {
            power = power.mul(&minus_r).truncate(&rel);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Ok(sum.truncate(&rel).shift(&-v).scale(&c.recip()))
    }

    /// Inverse with an explicit cap: the input is first truncated so that
    /// the result is known below `order` (or less, if the input is coarser).
    pub fn invert_to(&self, order: &Q) -> Result<Self, SeriesError> {
        let (v, _) = self.leading().ok_or(SeriesError::ZeroDivision)?;
        let needed = order + v + v;
        self.truncate_at(needed).invert()
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.invert()?))
    }

    /// Termwise `d/dq`; truncation drops by one.
    pub fn d_q(&self) -> Self {
        let one = Q::one();
        let trunc = self.trunc.shifted(&-one.clone());
        let it = self.terms.iter().map(|(e, c)| (e - &one, c * e));
        Self::from_terms(it, trunc)
    }

    /// Compares all terms with exponent `< d`. Fails loudly when either
    /// side is not known that far.
    pub fn equal_up_to(&self, other: &Self, d: &Q) -> Result<bool, SeriesError> {
        let avail = self.trunc.clone().min(other.trunc.clone());
        if let Truncation::At(t) = &avail {
            if t < d {
                return Err(SeriesError::InsufficientPrecision {
                    needed: d.to_string(),
                    available: t.to_string(),
                });
            }
        }
        let below = |s: &Self| -> Vec<(Q, Q)> {
            s.terms.iter().filter(|(e, _)| *e < d).map(|(e, c)| (e.clone(), c.clone())).collect()
        };
        Ok(below(self) == below(other))
    }

    /// Whether every exponent lies in `base + step * Z`.
    pub fn on_lattice(&self, base: &Q, step: &Q) -> bool {
        self.terms.keys().all(|e| ((e - base) / step).is_integer())
    }

    /// Canonical rendering, e.g. `1/2*q^-1 + 3*q^2 + O(q^5)`.
    pub fn render(&self) -> String {
        self.render_in("q")
    }

    pub fn render_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_power(var, e);
            match mono {
                None => out.push_str(&abs.to_string()),
                Some(m) if abs.is_one() => out.push_str(&m),
                Some(m) => {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&m);
                }
            }
        }
        if let Truncation::At(t) = &self.trunc {
            let o = format!("O({})", render_power(var, t).unwrap_or_else(|| "1".to_string()));
            if out.is_empty() {
                out = o;
            } else {
                out.push_str(" + ");
                out.push_str(&o);
            }
        } else if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn render_power(var: &str, e: &Q) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(var.to_string())
    } else if e.is_integer() {
        Some(format!("{var}^{e}"))
    } else {
        Some(format!("{var}^({e})"))
    }
}

impl fmt::Display for NovikovSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl From<Q> for NovikovSeries {
    fn from(c: Q) -> Self {
        NovikovSeries::constant(c)
    }
}

impl<'a> Add<&'a NovikovSeries> for &'a NovikovSeries {
    type Output = NovikovSeries;
    fn add(self, rhs: &'a NovikovSeries) -> NovikovSeries {
        NovikovSeries::add(self, rhs)
    }
}

impl<'a> Sub<&'a NovikovSeries> for &'a NovikovSeries {
    type Output = NovikovSeries;
    fn sub(self, rhs: &'a NovikovSeries) -> NovikovSeries {
        NovikovSeries::sub(self, rhs)
    }
}

impl<'a> Mul<&'a NovikovSeries> for &'a NovikovSeries {
    type Output = NovikovSeries;
    fn mul(self, rhs: &'a NovikovSeries) -> NovikovSeries {
        NovikovSeries::mul(self, rhs)
    }
}

impl Neg for &NovikovSeries {
    type Output = NovikovSeries;
    fn neg(self) -> NovikovSeries {
        NovikovSeries::neg(self)
    }
}
