//! `gw` task.

use nvcalc_core::gw::{
    divisor_relations_check, relative_z2, solve_psi_eta, uueq_rewrite_check, wdvv_check, CohomologyModel,
    EqModuleModel, GwData, ModelFile,
};
use nvcalc_core::linalg::SeriesVec;
use nvcalc_core::report::{Check, Status};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;
use crate::ode::ProblemRecord;
use crate::task::{payload, Run};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum GwCheck {
    Relations,
    Wdvv,
    Relative,
    PsiEta,
    GaussManin,
    Uueq,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GwPayload {
    #[serde(default)]
    model: Option<ModelFile>,
    checks: Vec<GwCheck>,
    /// Inputs `x` of the WDVV instance: class names or `z0`, `z1`, `z2`.
    #[serde(default)]
    wdvv: Option<Vec<String>>,
    /// Explicit `(psi, eta, z2)` for the equivariant dictionary; by default
    /// they come from the model.
    #[serde(default)]
    eq_problem: Option<ProblemRecord>,
}

fn vec_check(name: &str, equation: &str, r: &SeriesVec, names: &[String]) -> Check {
    Check {
        name: name.into(),
        equation: equation.into(),
        status: if r.is_zero() { Status::Pass } else { Status::Fail },
        residual: Some(r.render(names)),
        detail: None,
    }
}

fn wdvv_input(name: &str, model: &CohomologyModel, gw: &GwData) -> Result<SeriesVec, CliError> {
    Ok(match name {
        "z0" => gw.z0.clone(),
        "z1" => gw.z1.clone(),
        "z2" => gw.z2.clone(),
        class => model.class(class)?,
    })
}

pub fn run_gw(v: Value, run: &mut Run) -> Result<(), CliError> {
    let p: GwPayload = payload(v)?;
    let built = p.model.as_ref().map(|m| m.build(run.trunc.as_ref())).transpose()?;
    let need = |what: GwCheck| -> Result<&(CohomologyModel, GwData), CliError> {
        built
            .as_ref()
            .ok_or_else(|| CliError::domain(format!("check {what:?} needs a model")))
    };
    for check in &p.checks {
        match check {
            GwCheck::Relations => {
                let (model, gw) = need(*check)?;
                run.extend(divisor_relations_check(model, gw));
            }
            GwCheck::Wdvv => {
                let (model, gw) = need(*check)?;
                let inputs = p.wdvv.clone().unwrap_or_else(|| vec!["z1".into()]);
                for x in inputs {
                    let r = wdvv_check(&wdvv_input(&x, model, gw)?, model, gw);
                    run.check(vec_check(&format!("wdvv[{x}]"), "wdvv", &r, model.names()));
                }
            }
            GwCheck::Relative => {
                let (model, gw) = need(*check)?;
                let (val, c) = relative_z2(model, gw);
                run.value("relative-z2", val.render(model.names()));
                match c {
                    Some(c) => run.check(c),
                    None => run.check(Check::boolean("relative-z2", "relative-gw", true, "no z2tilde supplied")),
                }
            }
            GwCheck::PsiEta => {
                let (model, gw) = need(*check)?;
                let (psi, eta) = solve_psi_eta(model, gw)?;
                let back = gw.z1.scale(&psi).sub(&model.m().scale(&eta)).sub(&model.w());
                run.value("psi", psi.render());
                run.value("eta", eta.render());
                run.check(vec_check("psi-eta", "express-o", &back, model.names()));
            }
            GwCheck::GaussManin => {
                let eqm = match &p.eq_problem {
                    Some(rec) => EqModuleModel::standard(rec.clone().build(run)?)?,
                    None => {
                        let (model, gw) = need(*check)?;
                        EqModuleModel::from_gw(model, gw)?
                    }
                };
                let gm = eqm.gauss_manin()?;
                let names = EqModuleModel::eq_names();
                run.value("gamma(e)", gm.gamma_e.render(&names));
                run.value("u*gamma(s)", gm.u_gamma_s.render(&names));
                run.extend(eqm.report());
            }
            GwCheck::Uueq => {
                let (model, gw) = need(*check)?;
                run.extend(uueq_rewrite_check(model, gw)?);
            }
        }
    }
    Ok(())
}
