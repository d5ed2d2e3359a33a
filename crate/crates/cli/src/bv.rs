//! `bv` task.

use clap::ValueEnum;
use nvcalc_core::bv::{
    bs_report, check_bv_axioms, check_delta_nabla, check_gauge, check_leibniz, check_minus1_delta,
    check_modified_bracket, element_from_record, r_endomorphism_check, second_order_report, BVModel, BvModelFile,
    ElementRecord,
};
use nvcalc_core::linalg::SeriesVec;
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;
use crate::ode::ProblemRecord;
use crate::task::{payload, Run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BvCheck {
    Axioms,
    Leibniz,
    DeltaNabla,
    Gauge,
    Bs,
    SecondOrder,
}

/// A named element of the model or an inline `{basis name: series}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ElementRef {
    Name(String),
    Inline(ElementRecord),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BvPayload {
    model: BvModelFile,
    #[serde(default)]
    problem: Option<ProblemRecord>,
    #[serde(default)]
    a: Option<ElementRef>,
    #[serde(default)]
    alpha: Option<ElementRef>,
    #[serde(default)]
    s: Option<ElementRef>,
    #[serde(default)]
    k: Option<ElementRef>,
    #[serde(default)]
    checks: Vec<BvCheck>,
}

fn resolve(model: &BVModel, r: &ElementRef, run: &Run) -> Result<SeriesVec, CliError> {
    let v = match r {
        ElementRef::Name(n) => model.element(n)?,
        ElementRef::Inline(rec) => element_from_record(model, rec)?,
    };
    Ok(match &run.trunc {
        Some(t) => v.truncate(t),
        None => v,
    })
}

fn required<'a>(r: &'a Option<ElementRef>, what: &str, check: BvCheck) -> Result<&'a ElementRef, CliError> {
    r.as_ref()
        .ok_or_else(|| CliError::domain(format!("check {check:?} needs the element `{what}`")))
}

/// Payload checks first, then `extra`, without repeats; axioms when both are empty.
pub fn run_bv(v: Value, extra: &[BvCheck], run: &mut Run) -> Result<(), CliError> {
    let p: BvPayload = payload(v)?;
    let prob = p.problem.clone().map(|r| r.build(run)).transpose()?;
    let (model, nabla) = p.model.build(run.trunc.as_ref(), prob.as_ref())?;
    let mut checks: Vec<BvCheck> = Vec::new();
    for c in p.checks.iter().chain(extra) {
        if !checks.contains(c) {
            checks.push(*c);
        }
    }
    if checks.is_empty() {
        checks.push(BvCheck::Axioms);
    }
    let a = match &p.a {
        Some(r) => resolve(&model, r, run)?,
        None => model.zero(),
    };
    let need_prob = |check: BvCheck| {
        prob.as_ref()
            .ok_or_else(|| CliError::domain(format!("check {check:?} needs an ODE problem")))
    };
    for check in checks {
        match check {
            BvCheck::Axioms => {
                run.extend(check_bv_axioms(&model));
                run.extend(check_modified_bracket(&model));
                if let Some(k) = &p.k {
                    let k = resolve(&model, k, run)?;
                    run.extend(r_endomorphism_check(&model, &k));
                }
            }
            BvCheck::Leibniz => run.extend(check_leibniz(&nabla, &model)),
            BvCheck::DeltaNabla => {
                run.extend(check_delta_nabla(&nabla, &a, &model));
                run.extend(check_minus1_delta(&nabla, &a, &model));
            }
            BvCheck::Gauge => {
                let alpha = resolve(&model, required(&p.alpha, "alpha", check)?, run)?;
                run.extend(check_gauge(&nabla, &alpha, &a, &model)?);
            }
            BvCheck::Bs => {
                let s = resolve(&model, required(&p.s, "s", check)?, run)?;
                run.extend(bs_report(&nabla, &s, need_prob(check)?, &model));
            }
            BvCheck::SecondOrder => {
                let s = resolve(&model, required(&p.s, "s", check)?, run)?;
                run.extend(second_order_report(&nabla, &s, need_prob(check)?, &model));
            }
        }
    }
    Ok(())
}
