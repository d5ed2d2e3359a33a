//! Polynomials / truncated power series in an auxiliary variable `u`
//! (degree 2) with Novikov-series coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::{NovikovSeries, Q, SeriesError};

/// `sum_k c_k u^k`. Powers `>= u_trunc` are unknown; `None` means exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct USeries {
    coeffs: BTreeMap<u32, NovikovSeries>,
    u_trunc: Option<u32>,
}

impl USeries {
    pub fn zero() -> Self {
        USeries { coeffs: BTreeMap::new(), u_trunc: None }
    }

    pub fn constant(c: NovikovSeries) -> Self {
        Self::monomial(c, 0)
    }

    /// `c u^k`.
    pub fn monomial(c: NovikovSeries, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, c);
        USeries { coeffs, u_trunc: None }.normalized()
    }

    pub fn with_u_truncation(mut self, u_trunc: u32) -> Self {
        self.u_trunc = Some(self.u_trunc.map_or(u_trunc, |t| t.min(u_trunc)));
        self.normalized()
    }

    pub fn u_truncation(&self) -> Option<u32> {
        self.u_trunc
    }

    /// Coefficient of `u^k` (exact zero when absent).
    pub fn coeff(&self, k: u32) -> NovikovSeries {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u32, &NovikovSeries)> {
        self.coeffs.iter()
    }

    /// Drops exact-zero coefficients and powers beyond the truncation.
    /// Truncated zeros (`O(q^t)`) are kept since they carry information.
    fn normalized(mut self) -> Self {
        let ut = self.u_trunc;
        self.coeffs.retain(|k, c| !c.is_exact_zero() && ut.is_none_or(|t| *k < t));
        self
    }

    /// Every stored coefficient has no known terms.
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(NovikovSeries::is_zero)
    }

    fn merged_trunc(&self, other: &Self) -> Option<u32> {
        match (self.u_trunc, other.u_trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            let e = coeffs.entry(*k).or_default();
            *e = e.add(c);
        }
        USeries { coeffs, u_trunc: self.merged_trunc(other) }.normalized()
    }

    pub fn neg(&self) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
            u_trunc: self.u_trunc,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // both sides start at u^0 at worst, so the known range is the min
        let u_trunc = self.merged_trunc(other);
        let mut coeffs: BTreeMap<u32, NovikovSeries> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let e = coeffs.entry(i + j).or_default();
                *e = e.add(&a.mul(b));
            }
        }
        USeries { coeffs, u_trunc }.normalized()
    }

    /// Multiplication by a `u`-independent scalar.
    pub fn scale(&self, f: &NovikovSeries) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.mul(f))).collect(),
            u_trunc: self.u_trunc,
        }
        .normalized()
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
            u_trunc: self.u_trunc,
        }
        .normalized()
    }

    /// Multiplication by `u^k`.
    pub fn shift_u(&self, k: u32) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|(i, c)| (i + k, c.clone())).collect(),
            u_trunc: self.u_trunc.map(|t| t + k),
        }
    }

    /// Division by `u`; fails unless the `u^0` coefficient is known to vanish.
    pub fn div_u(&self) -> Option<Self> {
        if !self.coeff(0).is_zero() {
            return None;
        }
        Some(USeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| **k > 0)
                .map(|(k, c)| (k - 1, c.clone()))
                .collect(),
            u_trunc: self.u_trunc.map(|t| t.saturating_sub(1)),
        })
    }

    /// `d/dq` coefficientwise (`u` is constant in `q`).
    pub fn d_q(&self) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.d_q())).collect(),
            u_trunc: self.u_trunc,
        }
        .normalized()
    }

    /// Coefficientwise comparison up to `q^d`, on all known `u` powers.
    pub fn equal_up_to(&self, other: &Self, d: &Q) -> Result<bool, SeriesError> {
        let ut = self.merged_trunc(other);
        let keys: std::collections::BTreeSet<u32> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        for k in keys {
            if ut.is_some_and(|t| k >= t) {
                continue;
            }
            if !self.coeff(k).equal_up_to(&other.coeff(k), d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return match self.u_trunc {
                Some(t) => format!("O(u^{t})"),
                None => "0".to_string(),
            };
        }
        let mut parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({})", c.render()),
                1 => format!("({})*u", c.render()),
                _ => format!("({})*u^{k}", c.render()),
            })
            .collect();
        if let Some(t) = self.u_trunc {
            parts.push(format!("O(u^{t})"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
