//! The first-order system in `(rho, sigma)` and the equations obtained from
//! it by elimination: the second-order equation for `rho`, the Riccati
//! equation for `alpha = rho^{-1} d_q rho`, the projective equation for
//! `lambda = -psi^{-1} alpha`, and the Schwarzian equation for quotients of
//! solutions.
//!
//! All functions return residuals; a candidate solves an equation iff its
//! residual has no terms below the residual's truncation.

mod mirror;
mod solver;

pub use mirror::{log_derivative_h, mirror_a, mirror_a_residual, mirror_ode_residual};
pub use solver::{fundamental_pair, indicial_roots, solve_second_order, LatticeSeed};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::novikov::{q, qi, NovikovSeries, SeriesError, Q};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OdeError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("psi must have a nonzero leading term")]
    DegeneratePsi,
    #[error("resonant exponent q^{exponent}: indicial factor vanishes, recursion does not determine the coefficient")]
    ResonantExponent { exponent: Q },
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("irregular singular point: {0}")]
    IrregularSingular(String),
    #[error("seed coefficient at q^{exponent} violates the equation (residual {residual})")]
    InconsistentSeed { exponent: Q, residual: Q },
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
}

/// The coefficients `(psi, eta, z2)` of the linear system
/// `d_q (rho, sigma) + [[0, psi], [4 z2 psi, eta]] (rho, sigma) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdeProblem {
    pub psi: NovikovSeries,
    pub eta: NovikovSeries,
    pub z2: NovikovSeries,
}

impl OdeProblem {
    pub fn new(psi: NovikovSeries, eta: NovikovSeries, z2: NovikovSeries) -> Result<Self, OdeError> {
        if psi.is_zero() {
            return Err(OdeError::DegeneratePsi);
        }
        Ok(OdeProblem { psi, eta, z2 })
    }

    /// Constant coefficients, handy for small examples.
    pub fn constant(psi: Q, eta: Q, z2: Q) -> Result<Self, OdeError> {
        Self::new(psi.into(), eta.into(), z2.into())
    }

    /// `d_q psi / psi`.
    pub fn psi_log_derivative(&self) -> Result<NovikovSeries, OdeError> {
        Ok(self.psi.d_q().mul(&self.psi.invert()?))
    }

    /// `eta - d_q psi / psi`, the first-order coefficient shared by the
    /// second-order, Riccati and Schwarzian equations.
    pub fn friction(&self) -> Result<NovikovSeries, OdeError> {
        Ok(self.eta.sub(&self.psi_log_derivative()?))
    }

    /// `4 z2 psi`.
    fn four_z2_psi(&self) -> NovikovSeries {
        self.z2.mul(&self.psi).scale(&qi(4))
    }

    /// `4 z2 psi^2`.
    fn four_z2_psi2(&self) -> NovikovSeries {
        self.four_z2_psi().mul(&self.psi)
    }

    /// Truncates every coefficient.
    pub fn truncate_at(&self, t: Q) -> Self {
        OdeProblem {
            psi: self.psi.truncate_at(t.clone()),
            eta: self.eta.truncate_at(t.clone()),
            z2: self.z2.truncate_at(t),
        }
    }
}

/// `(d_q rho + psi sigma, d_q sigma + 4 z2 psi rho + eta sigma)`.
pub fn system_residual(
    rho: &NovikovSeries,
    sigma: &NovikovSeries,
    prob: &OdeProblem,
) -> (NovikovSeries, NovikovSeries) {
    let first = rho.d_q().add(&prob.psi.mul(sigma));
    let second = sigma
        .d_q()
        .add(&prob.four_z2_psi().mul(rho))
        .add(&prob.eta.mul(sigma));
    (first, second)
}

/// Eliminates `sigma = -psi^{-1} d_q rho`.
pub fn sigma_from_rho(rho: &NovikovSeries, prob: &OdeProblem) -> Result<NovikovSeries, OdeError> {
    Ok(rho.d_q().mul(&prob.psi.invert()?).neg())
}

/// `(p, r)` with the second-order equation `d_q^2 rho + p d_q rho + r rho = 0`:
/// `p = eta - d_q psi / psi`, `r = -4 z2 psi^2`.
pub fn second_order_coeffs(prob: &OdeProblem) -> Result<(NovikovSeries, NovikovSeries), OdeError> {
    Ok((prob.friction()?, prob.four_z2_psi2().neg()))
}

pub fn second_order_residual(rho: &NovikovSeries, prob: &OdeProblem) -> Result<NovikovSeries, OdeError> {
    let (p, r) = second_order_coeffs(prob)?;
    let d1 = rho.d_q();
    Ok(d1.d_q().add(&p.mul(&d1)).add(&r.mul(rho)))
}

/// `alpha = rho^{-1} d_q rho`.
pub fn log_derivative(rho: &NovikovSeries) -> Result<NovikovSeries, OdeError> {
    Ok(rho.d_q().mul(&rho.invert()?))
}

/// `d_q alpha + alpha^2 + (eta - d_q psi/psi) alpha - 4 z2 psi^2`.
pub fn riccati_residual(alpha: &NovikovSeries, prob: &OdeProblem) -> Result<NovikovSeries, OdeError> {
    let p = prob.friction()?;
    Ok(alpha
        .d_q()
        .add(&alpha.mul(alpha))
        .add(&p.mul(alpha))
        .sub(&prob.four_z2_psi2()))
}

/// `lambda = -psi^{-1} alpha`.
pub fn lambda_from_alpha(alpha: &NovikovSeries, prob: &OdeProblem) -> Result<NovikovSeries, OdeError> {
    Ok(alpha.mul(&prob.psi.invert()?).neg())
}

/// `d_q lambda - psi lambda^2 + eta lambda + 4 z2 psi`.
pub fn projective_residual(lambda: &NovikovSeries, prob: &OdeProblem) -> NovikovSeries {
    lambda
        .d_q()
        .sub(&prob.psi.mul(&lambda.mul(lambda)))
        .add(&prob.eta.mul(lambda))
        .add(&prob.four_z2_psi())
}

/// Schwarzian derivative `d_q(t''/t') - (t''/t')^2 / 2`.
pub fn schwarzian(theta: &NovikovSeries) -> Result<NovikovSeries, OdeError> {
    let d1 = theta.d_q();
    let ratio = theta.d_q().d_q().mul(&d1.invert()?);
    Ok(ratio.d_q().sub(&ratio.mul(&ratio).scale(&q(1, 2))))
}

/// `S_q theta + d_q p + p^2/2 + 8 z2 psi^2` with `p = eta - d_q psi/psi`.
pub fn schwarz_residual(theta: &NovikovSeries, prob: &OdeProblem) -> Result<NovikovSeries, OdeError> {
    let p = prob.friction()?;
    Ok(schwarzian(theta)?
        .add(&p.d_q())
        .add(&p.mul(&p).scale(&q(1, 2)))
        .add(&prob.four_z2_psi2().scale(&qi(2))))
}

/// `(a theta + b) / (c theta + d)`.
pub fn mobius(theta: &NovikovSeries, a: &Q, b: &Q, c: &Q, d: &Q) -> Result<NovikovSeries, OdeError> {
    if (a * d - b * c).is_zero() {
        return Err(OdeError::InvalidSeed("degenerate Mobius transform".into()));
    }
    let num = theta.scale(a).add(&NovikovSeries::constant(b.clone()));
    let den = theta.scale(c).add(&NovikovSeries::constant(d.clone()));
    Ok(num.div(&den)?)
}

/// Runs the elimination chain on a candidate `rho`: the two components of
/// the system (with `sigma` eliminated), the second-order equation, the
/// Riccati equation for `alpha` and the projective equation for `lambda`.
pub fn chain_report(rho: &NovikovSeries, prob: &OdeProblem) -> Report {
    let mut rep = Report::new();
    match sigma_from_rho(rho, prob) {
        Ok(sigma) => {
            let (r1, r2) = system_residual(rho, &sigma, prob);
            rep.push(Check::from_residual("system.rho", "1st-order", &r1));
            rep.push(Check::from_residual("system.sigma", "1st-order", &r2));
        }
        Err(e) => rep.push(Check::error("system", "1st-order", e)),
    }
    match second_order_residual(rho, prob) {
        Ok(r) => rep.push(Check::from_residual("second-order", "2nd-order", &r)),
        Err(e) => rep.push(Check::error("second-order", "2nd-order", e)),
    }
    let alpha = log_derivative(rho);
    match alpha.as_ref().map_err(Clone::clone).and_then(|a| riccati_residual(a, prob)) {
        Ok(r) => rep.push(Check::from_residual("riccati", "nonlinear-1st-order", &r)),
        Err(e) => rep.push(Check::error("riccati", "nonlinear-1st-order", e)),
    }
    match alpha.and_then(|a| lambda_from_alpha(&a, prob)) {
        Ok(l) => rep.push(Check::from_residual(
            "projective",
            "projective-eq",
            &projective_residual(&l, prob),
        )),
        Err(e) => rep.push(Check::error("projective", "projective-eq", e)),
    }
    rep
}

/// Schwarzian equation for the quotient of two solutions.
pub fn quotient_report(rho1: &NovikovSeries, rho2: &NovikovSeries, prob: &OdeProblem) -> Report {
    let mut rep = Report::new();
    let res = rho2
        .div(rho1)
        .map_err(OdeError::from)
        .and_then(|theta| schwarz_residual(&theta, prob));
    match res {
        Ok(r) => rep.push(Check::from_residual("schwarz", "schwarz", &r)),
        Err(e) => rep.push(Check::error("schwarz", "schwarz", e)),
    }
    rep
}
