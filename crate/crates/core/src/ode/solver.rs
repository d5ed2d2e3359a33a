//! Order-by-order solution of `d_q^2 rho + p d_q rho + r rho = 0` on a
//! lattice `q^{e0 + Z/N}`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{OdeError, OdeProblem};
use crate::novikov::{NovikovSeries, Truncation, Q};

/// Ansatz `rho = sum_n c_n q^{base + n * step}` with the first coefficients
/// prescribed. `step` must be `1/N` for a positive integer `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSeed {
    #[serde(with = "crate::novikov::rational")]
    pub base: Q,
    #[serde(with = "crate::novikov::rational")]
    pub step: Q,
    #[serde(with = "crate::novikov::rational::vec")]
    pub coeffs: Vec<Q>,
}

impl LatticeSeed {
    pub fn new(base: Q, step: Q, coeffs: Vec<Q>) -> Result<Self, OdeError> {
        if !step.is_positive() || !step.recip().is_integer() {
            return Err(OdeError::InvalidSeed(format!("step {step} is not 1/N")));
        }
        if coeffs.is_empty() {
            return Err(OdeError::InvalidSeed("no seed coefficients".into()));
        }
        Ok(LatticeSeed { base, step, coeffs })
    }

    fn exponent(&self, n: usize) -> Q {
        &self.base + &self.step * Q::from_integer(n.into())
    }
}

/// Checks that every exponent of `s` sits on `shift + step*Z` and is at
/// least `shift`.
fn check_coefficient(s: &NovikovSeries, shift: &Q, step: &Q, name: &str) -> Result<(), OdeError> {
    for (e, _) in s.terms() {
        if !((e - shift) / step).is_integer() {
            return Err(OdeError::LatticeMismatch(format!(
                "{name} has a term q^{e} off the lattice {shift} + {step}*Z"
            )));
        }
        if e < shift {
            return Err(OdeError::IrregularSingular(format!("{name} has a term q^{e} below q^{shift}")));
        }
    }
    Ok(())
}

/// Determines `rho` below `q^order` from the seed. The seed coefficients
/// fix `c_0, ..., c_{k-1}`; each of them must satisfy its own recursion
/// equation. Later coefficients are forced by
/// `c_n I(d_n) = -sum_{m<n} (p_{d_n - d_m - 1} d_m + r_{d_n - d_m - 2}) c_m`
/// with `I(d) = d(d-1) + p_{-1} d + r_{-2}`.
///
/// The returned truncation is `order` unless the coefficients of the
/// problem are coarser.
pub fn solve_second_order(prob: &OdeProblem, seed: &LatticeSeed, order: &Q) -> Result<NovikovSeries, OdeError> {
    let one = Q::one();
    let two = &one + &one;
    // p = eta - psi'/psi computed to the precision the recursion can use
    let (v, _) = prob.psi.leading().ok_or(OdeError::DegeneratePsi)?;
    let p_needed = order - &seed.base;
    let psi_inv = prob.psi.invert_to(&(&p_needed - v))?;
    let p = prob.eta.sub(&prob.psi.d_q().mul(&psi_inv));
    let r = prob.z2.mul(&prob.psi).mul(&prob.psi).scale(&Q::from_integer(4.into())).neg();

    check_coefficient(&p, &-one.clone(), &seed.step, "p")?;
    check_coefficient(&r, &-two.clone(), &seed.step, "r")?;

    let mut limit = Truncation::At(order.clone());
    limit = limit.min(p.truncation().shifted(&(&seed.base + &one)));
    limit = limit.min(r.truncation().shifted(&(&seed.base + &two)));

    let p_m1 = p.coeff(&-one.clone());
    let r_m2 = r.coeff(&-two.clone());
    let indicial = |d: &Q| d * (d - &one) + &p_m1 * d + &r_m2;

    let mut coeffs: Vec<Q> = Vec::new();
    let mut n = 0usize;
    loop {
        let d = seed.exponent(n);
        if !limit.exceeds(&d) {
            break;
        }
        let mut s = Q::zero();
        for (m, cm) in coeffs.iter().enumerate() {
            if cm.is_zero() {
                continue;
            }
            let dm = seed.exponent(m);
            let gap = &d - &dm;
            s += cm * (p.coeff(&(&gap - &one)) * &dm + r.coeff(&(&gap - &two)));
        }
        let ind = indicial(&d);
        if n < seed.coeffs.len() {
            let c = seed.coeffs[n].clone();
            let res = &c * &ind + &s;
            if !res.is_zero() {
                return Err(OdeError::InconsistentSeed { exponent: d, residual: res });
            }
            coeffs.push(c);
        } else {
            if ind.is_zero() {
                return Err(OdeError::ResonantExponent { exponent: d });
            }
            coeffs.push(-s / ind);
        }
        n += 1;
    }
    if n < seed.coeffs.len() {
        return Err(OdeError::InvalidSeed(format!(
            "{} seed coefficients but only {n} lattice points below the truncation",
            seed.coeffs.len()
        )));
    }
    let terms = coeffs.into_iter().enumerate().map(|(i, c)| (seed.exponent(i), c));
    Ok(NovikovSeries::from_terms(terms, limit))
}

/// Roots `d1 <= d2` of the indicial polynomial `d(d-1) + p_{-1} d + r_{-2}`.
/// Fails with `LatticeMismatch` when they are not rational.
pub fn indicial_roots(prob: &OdeProblem) -> Result<(Q, Q), OdeError> {
    let one = Q::one();
    let (v, _) = prob.psi.leading().ok_or(OdeError::DegeneratePsi)?;
    // psi'/psi = v q^{-1} + (higher terms)
    let p_m1 = prob.eta.coeff(&-one.clone()) - v;
    let r = prob.z2.mul(&prob.psi).mul(&prob.psi);
    let r_m2 = -r.coeff(&Q::from_integer((-2).into())) * Q::from_integer(4.into());
    let b = &p_m1 - &one;
    let disc = &b * &b - r_m2 * Q::from_integer(4.into());
    let root = rational_sqrt(&disc)
        .ok_or_else(|| OdeError::LatticeMismatch(format!("indicial discriminant {disc} is not a rational square")))?;
    let two = &one + &one;
    Ok(((-&b - &root) / &two, (-&b + root) / two))
}

fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

/// Two independent solutions `(rho1, rho2)` with leading terms `q^{d1}` and
/// `q^{d2}`, `d1 < d2` the indicial roots. When `d2 - d1` lies on the lattice
/// the coefficient of `rho1` at `q^{d2}` is set to 0; if the recursion is
/// inconsistent there (a logarithmic solution), `ResonantExponent` is returned.
pub fn fundamental_pair(prob: &OdeProblem, step: &Q, order: &Q) -> Result<(NovikovSeries, NovikovSeries), OdeError> {
    let (d1, d2) = indicial_roots(prob)?;
    if d1 == d2 {
        return Err(OdeError::ResonantExponent { exponent: d1 });
    }
    let one = Q::one();
    let hi = solve_second_order(prob, &LatticeSeed::new(d2.clone(), step.clone(), vec![one.clone()])?, order)?;
    let gap = (&d2 - &d1) / step;
    if !gap.is_integer() {
        let lo = solve_second_order(prob, &LatticeSeed::new(d1, step.clone(), vec![one])?, order)?;
        return Ok((lo, hi));
    }
    let head = solve_second_order(prob, &LatticeSeed::new(d1.clone(), step.clone(), vec![one])?, &d2)?;
    let mut coeffs: Vec<Q> = Vec::new();
    let mut e = d1.clone();
    while e < d2 && head.truncation().exceeds(&e) {
        coeffs.push(head.coeff(&e));
        e += step;
    }
    if e == d2 && Truncation::At(order.clone()).exceeds(&d2) {
        coeffs.push(Q::zero());
    }
    match solve_second_order(prob, &LatticeSeed::new(d1, step.clone(), coeffs)?, order) {
        Ok(lo) => Ok((lo, hi)),
        Err(OdeError::InconsistentSeed { exponent, .. }) if exponent == d2 => Err(OdeError::ResonantExponent { exponent }),
        Err(e) => Err(e),
    }
}
