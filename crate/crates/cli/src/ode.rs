//! `ode` and `mirror` tasks.

use nvcalc_core::novikov::rational;
use nvcalc_core::ode::{
    chain_report, fundamental_pair, indicial_roots, log_derivative, log_derivative_h, mirror_a, mirror_a_residual, mirror_ode_residual,
    quotient_report, schwarzian, solve_second_order, LatticeSeed, OdeProblem,
};
use nvcalc_core::report::Check;
use nvcalc_core::{NovikovSeries, Q};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;
use crate::task::{payload, Run};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemRecord {
    pub psi: NovikovSeries,
    pub eta: NovikovSeries,
    pub z2: NovikovSeries,
}

impl ProblemRecord {
    pub fn build(self, run: &Run) -> Result<OdeProblem, CliError> {
        let prob = OdeProblem::new(self.psi, self.eta, self.z2)?;
        let prob = match &run.trunc {
            Some(t) => OdeProblem { psi: prob.psi.truncate(t), eta: prob.eta.truncate(t), z2: prob.z2.truncate(t) },
            None => prob,
        };
        // every check divides by psi
        prob.friction()?;
        Ok(prob)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolveRecord {
    #[serde(with = "rational")]
    base: Q,
    #[serde(with = "rational")]
    step: Q,
    #[serde(with = "rational::vec")]
    coeffs: Vec<Q>,
    #[serde(with = "rational")]
    order: Q,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairRecord {
    #[serde(with = "rational")]
    step: Q,
    #[serde(with = "rational")]
    order: Q,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchwarzianRecord {
    theta: NovikovSeries,
    expect: NovikovSeries,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OdePayload {
    problem: ProblemRecord,
    #[serde(default)]
    rho: Option<NovikovSeries>,
    #[serde(default)]
    solve: Option<SolveRecord>,
    #[serde(default)]
    pair: Option<PairRecord>,
    #[serde(default)]
    schwarzian: Vec<SchwarzianRecord>,
}

pub fn run_ode(v: Value, run: &mut Run) -> Result<(), CliError> {
    let p: OdePayload = payload(v)?;
    let prob = p.problem.build(run)?;
    if let Some(rho) = p.rho {
        let rho = match &run.trunc {
            Some(t) => rho.truncate(t),
            None => rho,
        };
        // the Riccati and projective steps invert rho
        log_derivative(&rho)?;
        run.extend(chain_report(&rho, &prob));
    }
    if let Some(s) = p.solve {
        let seed = LatticeSeed::new(s.base, s.step, s.coeffs)?;
        let rho = solve_second_order(&prob, &seed, &run.cap(s.order))?;
        run.value("solve.rho", rho.render());
        run.extend_prefixed("solve", chain_report(&rho, &prob));
    }
    if let Some(pr) = p.pair {
        let (d1, d2) = indicial_roots(&prob)?;
        run.value("pair.exponents", vec![d1.to_string(), d2.to_string()]);
        let (lo, hi) = fundamental_pair(&prob, &pr.step, &run.cap(pr.order))?;
        run.value("pair.lo", lo.render());
        run.value("pair.hi", hi.render());
        run.extend_prefixed("pair.lo", chain_report(&lo, &prob));
        run.extend_prefixed("pair.hi", chain_report(&hi, &prob));
        run.extend_prefixed("pair", quotient_report(&lo, &hi, &prob));
    }
    for (i, s) in p.schwarzian.iter().enumerate() {
        let got = schwarzian(&s.theta)?;
        let c = Check::from_residual(&format!("schwarzian[{i}]"), "schwarzian", &got.sub(&s.expect));
        run.check(c.with_detail(got.render()));
    }
    Ok(())
}

fn h_check(name: &str, equation: &str, r: &NovikovSeries) -> Check {
    let mut c = Check::from_residual(name, equation, r);
    c.residual = Some(r.render_in("h"));
    c
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MirrorPayload {
    f: NovikovSeries,
    #[serde(with = "rational::vec")]
    p0: Vec<Q>,
    #[serde(with = "rational")]
    order: Q,
    /// Also check the scalar solutions `1/f` and `h/f`.
    #[serde(default = "default_true")]
    solutions: bool,
    #[serde(default)]
    eta: Vec<NovikovSeries>,
}

pub fn run_mirror(v: Value, run: &mut Run) -> Result<(), CliError> {
    let p: MirrorPayload = payload(v)?;
    let order = run.cap(p.order);
    let l = log_derivative_h(&p.f, &order)?;
    run.value("l", l.render_in("h"));
    for p0 in &p.p0 {
        let a = mirror_a(p0, &p.f, &order)?;
        let c = h_check(&format!("mirror-a[p0={p0}]"), "a-a2", &mirror_a_residual(&a, &l));
        run.check(c.with_detail(a.render_in("h")));
    }
    let mut candidates = Vec::new();
    if p.solutions {
        let inv = p.f.invert_to(&order)?;
        candidates.push(("1/f".to_string(), inv.clone()));
        candidates.push(("h/f".to_string(), inv.mul(&NovikovSeries::var()).truncate_at(order.clone())));
    }
    for (i, e) in p.eta.into_iter().enumerate() {
        candidates.push((format!("eta{i}"), e));
    }
    for (name, eta) in candidates {
        let r = mirror_ode_residual(&eta, &l);
        run.check(h_check(&format!("mirror-ode[{name}]"), "trivial-ode", &r));
    }
    Ok(())
}
