//! Mirror-side equations in the variable `h`. Series are the same type; the
//! variable name only matters for rendering.

use super::OdeError;
use crate::novikov::{NovikovSeries, Q};

/// `l = f^{-1} d_h f`, known below `order`.
pub fn log_derivative_h(f: &NovikovSeries, order: &Q) -> Result<NovikovSeries, OdeError> {
    let inv = f.invert_to(&(order + Q::from_integer(1.into())))?;
    Ok(f.d_q().mul(&inv).truncate_at(order.clone()))
}

/// `a = p0 / (p0 h - 1) - l`, known below `order`.
pub fn mirror_a(p0: &Q, f: &NovikovSeries, order: &Q) -> Result<NovikovSeries, OdeError> {
    let l = log_derivative_h(f, order)?;
    let den = NovikovSeries::monomial(p0.clone(), Q::from_integer(1.into())).sub(&NovikovSeries::one());
    let first = den.invert_to(order)?.scale(p0);
    Ok(first.sub(&l).truncate_at(order.clone()))
}

/// `d_h a + a^2 + 2 l a + (d_h l + l^2)`.
pub fn mirror_a_residual(a: &NovikovSeries, l: &NovikovSeries) -> NovikovSeries {
    let two = Q::from_integer(2.into());
    a.d_q()
        .add(&a.mul(a))
        .add(&l.mul(a).scale(&two))
        .add(&l.d_q())
        .add(&l.mul(l))
}

/// `d_h^2 eta + 2 l d_h eta + (d_h l + l^2) eta`; solved by `1/f` and `h/f`.
pub fn mirror_ode_residual(eta: &NovikovSeries, l: &NovikovSeries) -> NovikovSeries {
    let two = Q::from_integer(2.into());
    let d1 = eta.d_q();
    d1.d_q()
        .add(&l.mul(&d1).scale(&two))
        .add(&l.d_q().add(&l.mul(l)).mul(eta))
}
