use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use nvcalc_core::gw::EqModuleModel;
use nvcalc_core::ode::OdeProblem;
use nvcalc_core::{qi, NovikovSeries, Truncation};
use serde_json::Value;

fn task(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tasks").join(name).to_str().unwrap().to_string()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn nvcalc(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_nvcalc")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn names(report: &Value) -> Vec<String> {
    report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect()
}

#[test]
fn riccati_chain_is_all_zero() {
    let (code, rep) = nvcalc(&["run", &task("riccati_chain.json")]);
    assert_eq!(code, 0);
    assert_eq!(rep["schema"], 1);
    assert_eq!(rep["status"], "pass");
    assert_eq!(names(&rep), ["system.rho", "system.sigma", "second-order", "riccati", "projective"]);
    for c in rep["checks"].as_array().unwrap() {
        let r: NovikovSeries = c["residual"].as_str().unwrap().parse().unwrap();
        assert!(r.is_zero());
    }
}

#[test]
fn gauss_manin_shows_coefficients() {
    let (code, rep) = nvcalc(&["gw", &task("gauss_manin.json")]);
    assert_eq!(code, 0);
    let file: Value = serde_json::from_str(&std::fs::read_to_string(task("gauss_manin.json")).unwrap()).unwrap();
    let p = &file["payload"]["eq_problem"];
    let s = |k: &str| -> NovikovSeries { p[k].as_str().unwrap().parse().unwrap() };
    let prob = OdeProblem::new(s("psi"), s("eta"), s("z2")).unwrap();
    assert!(EqModuleModel::standard(prob.clone()).unwrap().report().all_pass());
    let shown = rep["values"]["u*gamma(s)"].as_str().unwrap();
    // coefficients 2 psi, -eta, -4 z2 psi, up to their O-terms
    for c in [prob.psi.scale(&qi(2)), prob.eta.neg(), prob.z2.mul(&prob.psi).scale(&qi(-4))] {
        let r = c.render();
        let known = r.split(" + O(").next().unwrap();
        assert!(shown.contains(known), "{shown} lacks {known}");
    }
}

#[test]
fn malformed_exponent_is_a_parse_error() {
    let p = scratch("cli-bad-exp.json", r#"{"problem": {"psi": "q^(1/0)", "eta": "0", "z2": "0"}}"#);
    let (code, rep) = nvcalc(&["ode", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(rep["error"]["kind"], "parse");
    let (code, _) = nvcalc(&["ode", p.to_str().unwrap(), "--trunc", "x"]);
    assert_eq!(code, 2);
}

#[test]
fn task_kind_must_match_subcommand() {
    let (code, rep) = nvcalc(&["bv", &task("riccati_chain.json")]);
    assert_eq!(code, 2);
    assert_eq!(rep["status"], "error");
}

#[test]
fn bv_flags_extend_payload_checks_once() {
    let (code, rep) = nvcalc(&["bv", &task("bv_polyvector.json"), "--axioms", "--leibniz"]);
    assert_eq!(code, 0);
    let n = names(&rep);
    let unique: BTreeSet<_> = n.iter().collect();
    assert_eq!(unique.len(), n.len(), "{n:?}");

    let p = scratch("cli-xi.json", r#"{"model": {"preset": {"name": "polyvector-xi-defect", "n": 4}}}"#);
    let (code, rep) = nvcalc(&["bv", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(rep["status"], "fail");
    assert!(rep["failures"].as_array().unwrap().iter().any(|f| f == "delta-bracket"));

    let (code, rep) = nvcalc(&["bv", p.to_str().unwrap(), "--gauge"]);
    assert_eq!(code, 4);
    assert_eq!(rep["error"]["kind"], "domain");
}

#[test]
fn trunc_override_caps_orders() {
    let (code, rep) = nvcalc(&["run", &task("mirror.json"), "--trunc", "4"]);
    assert_eq!(code, 0);
    let l: NovikovSeries = rep["values"]["l"].as_str().unwrap().replace('h', "q").parse().unwrap();
    assert_eq!(l.truncation(), &Truncation::At(qi(4)));
}

#[test]
fn operad_actions() {
    let (code, rep) = nvcalc(&["operad", "glue", &task("operad_glue.json")]);
    assert_eq!(code, 0);
    assert_eq!(rep["values"]["result"]["discs"][0]["radius"], "1/40");
    let (code, _) = nvcalc(&["operad", "sign", &task("operad_glue.json")]);
    assert_eq!(code, 2);
    let p = scratch("cli-invalid.json", r#"{"config": {"discs": [{"center": ["3/10", 0], "radius": "3/10"}, {"center": ["-3/10", 0], "radius": "3/10"}]}}"#);
    let (code, rep) = nvcalc(&["operad", "validate", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(rep["checks"][0]["detail"].as_str().unwrap().contains("intersect"));
}

#[test]
fn text_output() {
    let out = Command::new(env!("CARGO_BIN_EXE_nvcalc"))
        .args(["run", &task("schwarzian.json"), "--output", "text"])
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("task: ode\n"));
    assert!(s.contains("[PASS] schwarzian[1] (schwarzian) residual = 0 -- -3/2*q^-2"));
    assert!(s.ends_with("status: pass (3 checks, 0 failed)\n"));
}
