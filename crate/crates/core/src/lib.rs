//! Exact-arithmetic calculus over truncated Novikov series.
//!
//! - [`novikov`]: series arithmetic with carried truncation orders.
//! - [`ode`]: the linear system / second-order / Riccati / projective /
//!   Schwarzian equation chain, an order-by-order solver, and the mirror
//!   ODEs in the variable `h`.
//! - [`gw`]: finite quantum-cohomology models, divisor and WDVV relations,
//!   the `(psi, eta)` solver and the equivariant Gauss-Manin derivation.
//! - [`bv`]: finite BV algebras with connections and the identity checks
//!   relating them.
//! - [`operad`]: disc configurations, gluing, and Koszul-signed composition
//!   of graded multilinear operations.
//! - [`report`]: check reports shared by all modules.

pub mod bv;
pub mod gw;
pub mod linalg;
pub mod novikov;
pub mod operad;
pub mod ode;
pub mod report;

pub use novikov::{q, qi, NovikovSeries, SeriesError, Truncation, USeries, Q};
