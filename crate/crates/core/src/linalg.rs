//! Coefficient vectors over a named basis, with entries in `K` or `K[[u]]`.

use crate::novikov::{NovikovSeries, Truncation, USeries, Q};

/// `sum_i v_i b_i` with `v_i` Novikov series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesVec(pub Vec<NovikovSeries>);

impl SeriesVec {
    pub fn zero(n: usize) -> Self {
        SeriesVec(vec![NovikovSeries::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = NovikovSeries::one();
        v
    }

    /// `c b_i`.
    pub fn single(n: usize, i: usize, c: NovikovSeries) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = c;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> &NovikovSeries {
        &self.0[i]
    }

    fn zip(&self, other: &Self, f: impl Fn(&NovikovSeries, &NovikovSeries) -> NovikovSeries) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        SeriesVec(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, NovikovSeries::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, NovikovSeries::sub)
    }

    pub fn neg(&self) -> Self {
        SeriesVec(self.0.iter().map(NovikovSeries::neg).collect())
    }

    pub fn scale(&self, f: &NovikovSeries) -> Self {
        SeriesVec(self.0.iter().map(|c| c.mul(f)).collect())
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        SeriesVec(self.0.iter().map(|v| v.scale(c)).collect())
    }

    /// Coefficientwise `d/dq`.
    pub fn d_q(&self) -> Self {
        SeriesVec(self.0.iter().map(NovikovSeries::d_q).collect())
    }

    pub fn truncate(&self, t: &Truncation) -> Self {
        SeriesVec(self.0.iter().map(|c| c.truncate(t)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(NovikovSeries::is_zero)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.0.iter().all(NovikovSeries::is_exact_zero)
    }

    /// Indices with a known nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    /// Indices whose entry is not an exact zero (includes pure `O(q^d)` entries).
    pub fn stored(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_exact_zero()).map(|(i, _)| i)
    }

    /// Minimum truncation over the entries.
    pub fn truncation(&self) -> Truncation {
        self.0.iter().map(|c| c.truncation().clone()).min().unwrap_or(Truncation::Infinite)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_exact_zero())
            .map(|(c, n)| format!("({})*[{n}]", c.render()))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `sum_i v_i b_i` with `v_i` in `K[[u]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct USeriesVec(pub Vec<USeries>);

impl USeriesVec {
    pub fn zero(n: usize) -> Self {
        USeriesVec(vec![USeries::zero(); n])
    }

    /// `u^k v`.
    pub fn from_series(v: &SeriesVec, k: u32) -> Self {
        USeriesVec(v.0.iter().map(|c| USeries::monomial(c.clone(), k)).collect())
    }

    pub fn single(n: usize, i: usize, c: USeries) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = c;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> &USeries {
        &self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        USeriesVec(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        USeriesVec(self.0.iter().map(USeries::neg).collect())
    }

    pub fn scale(&self, f: &USeries) -> Self {
        USeriesVec(self.0.iter().map(|c| c.mul(f)).collect())
    }

    pub fn scale_series(&self, f: &NovikovSeries) -> Self {
        USeriesVec(self.0.iter().map(|c| c.scale(f)).collect())
    }

    pub fn shift_u(&self, k: u32) -> Self {
        USeriesVec(self.0.iter().map(|c| c.shift_u(k)).collect())
    }

    pub fn d_q(&self) -> Self {
        USeriesVec(self.0.iter().map(USeries::d_q).collect())
    }

    /// Division by `u`, if every `u^0` coefficient is known to vanish.
    pub fn div_u(&self) -> Option<Self> {
        self.0.iter().map(USeries::div_u).collect::<Option<Vec<_>>>().map(USeriesVec)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(USeries::is_zero)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(c, _)| !(c.coeffs().next().is_none() && c.u_truncation().is_none()))
            .map(|(c, n)| format!("[{}]*[{n}]", c.render()))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
