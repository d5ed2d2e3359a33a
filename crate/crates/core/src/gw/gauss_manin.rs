//! The equivariant module: a free `K[[u]]`-module on `e, s, s.s`, the map
//! `B_eq` from the span of `1, W, W*W`, and the Gauss-Manin operator
//! determined by `Gamma o B_eq = B_eq o D`.

use crate::linalg::{SeriesVec, USeriesVec};
use crate::novikov::{qi, NovikovSeries, USeries};
use crate::ode::OdeProblem;
use crate::report::{Check, Report, Status};

use super::{solve_psi_eta, CohomologyModel, GwData, GwError};

pub const SOURCE_BASIS: [&str; 3] = ["1", "W", "W*W"];
pub const EQ_BASIS: [&str; 3] = ["e", "s", "s.s"];

fn names(b: &[&str; 3]) -> Vec<String> {
    b.iter().map(|s| s.to_string()).collect()
}

fn u(c: NovikovSeries, k: u32) -> USeries {
    USeries::monomial(c, k)
}

/// `Gamma(e)`, `u Gamma(s)` and `Gamma(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussManin {
    pub gamma_e: USeriesVec,
    pub u_gamma_s: USeriesVec,
    pub gamma_s: USeriesVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqModuleModel {
    pub prob: OdeProblem,
    /// Images of `1, W, W*W` in the basis `e, s, s.s`.
    pub dictionary: [USeriesVec; 3],
}

impl EqModuleModel {
    /// The dictionary `B(1) = e`, `B(W) = u psi s` and
    /// `B(W*W) = 2u^2 psi^2 s.s - u^2 psi (eta - psi'/psi - q^{-1}) s - 4u^2 z2 psi^2 e`.
    pub fn standard(prob: OdeProblem) -> Result<Self, GwError> {
        let psi = &prob.psi;
        let dlog = psi.d_q().div(psi)?;
        let qinv = NovikovSeries::monomial(qi(1), qi(-1));
        let psi2 = psi.mul(psi);
        let b1 = USeriesVec::single(3, 0, u(NovikovSeries::one(), 0));
        let bw = USeriesVec::single(3, 1, u(psi.clone(), 1));
        let bww = USeriesVec(vec![
            u(prob.z2.mul(&psi2).scale(&qi(-4)), 2),
            u(psi.mul(&prob.eta.sub(&dlog).sub(&qinv)).neg(), 2),
            u(psi2.scale(&qi(2)), 2),
        ]);
        Ok(EqModuleModel { prob, dictionary: [b1, bw, bww] })
    }

    /// Takes `(psi, eta)` from the GW model and `z2` from the unit
    /// component of `z^(2)`. Independent of `z^(0)` and of the cup product.
    pub fn from_gw(model: &CohomologyModel, gw: &GwData) -> Result<Self, GwError> {
        let (psi, eta) = solve_psi_eta(model, gw)?;
        let z2 = match model.unit_index() {
            Some(i) => {
                let rest = SeriesVec::single(model.dim(), i, gw.z2.get(i).clone());
                if !gw.z2.sub(&rest).is_zero() {
                    return Err(GwError::DegreeMismatch("z2 must be a multiple of the unit".into()));
                }
                gw.z2.get(i).clone()
            }
            None if gw.z2.is_zero() => NovikovSeries::zero(),
            None => return Err(GwError::InvalidModel("z2 is nonzero but the model has no unit class".into())),
        };
        Self::standard(OdeProblem { psi, eta, z2 })
    }

    /// `B_eq` on `f 1 + g W + h W*W`.
    pub fn apply_b(&self, src: &USeriesVec) -> USeriesVec {
        let mut out = USeriesVec::zero(3);
        for (i, img) in self.dictionary.iter().enumerate() {
            out = out.add(&img.scale(src.get(i)));
        }
        out
    }

    /// `D(f 1 + g W) = u f' 1 + f W + (u g' - u q^{-1} g) W + g W*W`.
    pub fn d_source(&self, src: &USeriesVec) -> Result<USeriesVec, GwError> {
        if !src.get(2).is_zero() {
            return Err(GwError::InvalidModel("D is only available on the span of 1 and W".into()));
        }
        let (f, g) = (src.get(0), src.get(1));
        let qinv = NovikovSeries::monomial(qi(1), qi(-1));
        let w = f.add(&g.d_q().shift_u(1)).sub(&g.scale(&qinv).shift_u(1));
        Ok(USeriesVec(vec![f.d_q().shift_u(1), w, g.clone()]))
    }

    /// `B_eq(D(x))` for `x` in the span of `1, W`.
    pub fn gamma_via_dictionary(&self, src: &USeriesVec) -> Result<USeriesVec, GwError> {
        Ok(self.apply_b(&self.d_source(src)?))
    }

    pub fn gauss_manin(&self) -> Result<GaussManin, GwError> {
        let gamma_e = self.gamma_via_dictionary(&USeriesVec::single(3, 0, u(NovikovSeries::one(), 0)))?;
        // B(psi^{-1} W) = u s
        let psi_inv = self.prob.psi.invert()?;
        let u_gamma_s = self.gamma_via_dictionary(&USeriesVec::single(3, 1, u(psi_inv, 0)))?;
        let gamma_s = u_gamma_s
            .div_u()
            .ok_or_else(|| GwError::NoSolution("u Gamma(s) is not divisible by u".into()))?;
        Ok(GaussManin { gamma_e, u_gamma_s, gamma_s })
    }

    /// `Gamma(f e + g s) = f Gamma(e) + u f' e + g Gamma(s) + u g' s`.
    pub fn gamma(&self, x: &USeriesVec, gm: &GaussManin) -> Result<USeriesVec, GwError> {
        if !x.get(2).is_zero() {
            return Err(GwError::InvalidModel("Gamma(s.s) is not determined".into()));
        }
        let (f, g) = (x.get(0), x.get(1));
        Ok(gm
            .gamma_e
            .scale(f)
            .add(&gm.gamma_s.scale(g))
            .add(&USeriesVec(vec![f.d_q().shift_u(1), g.d_q().shift_u(1), USeries::zero()])))
    }

    /// `Gamma(e) = u psi s` and `u Gamma(s) = 2u^2 psi s.s - u^2 eta s - 4u^2 z2 psi e`.
    pub fn expected(&self) -> (USeriesVec, USeriesVec) {
        let p = &self.prob;
        let ge = USeriesVec::single(3, 1, u(p.psi.clone(), 1));
        let ugs = USeriesVec(vec![
            u(p.z2.mul(&p.psi).scale(&qi(-4)), 2),
            u(p.eta.neg(), 2),
            u(p.psi.scale(&qi(2)), 2),
        ]);
        (ge, ugs)
    }

    pub fn report(&self) -> Report {
        let mut rep = Report::new();
        let gm = match self.gauss_manin() {
            Ok(gm) => gm,
            Err(e) => {
                rep.push(Check::error("gauss-manin", "ueq-doubleprime", e));
                return rep;
            }
        };
        let (ge, ugs) = self.expected();
        let n = names(&EQ_BASIS);
        for (name, got, want) in [("gamma(e)", &gm.gamma_e, &ge), ("u*gamma(s)", &gm.u_gamma_s, &ugs)] {
            let r = got.sub(want);
            rep.push(Check {
                name: name.into(),
                equation: "ueq-doubleprime".into(),
                status: if r.is_zero() { Status::Pass } else { Status::Fail },
                residual: Some(r.render(&n)),
                detail: Some(got.render(&n)),
            });
        }
        rep
    }

    pub fn source_names() -> Vec<String> {
        names(&SOURCE_BASIS)
    }

    pub fn eq_names() -> Vec<String> {
        names(&EQ_BASIS)
    }
}
