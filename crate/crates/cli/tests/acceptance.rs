//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use nvcalc_core::bv::{self, BVModel, Connection};
use nvcalc_core::gw::{solve_psi_eta, ClassDecl, CohomologyModel, EqModuleModel, GwData};
use nvcalc_core::linalg::{SeriesVec, USeriesVec};
use nvcalc_core::ode::{
    chain_report, fundamental_pair, indicial_roots, log_derivative_h, mirror_a, mirror_a_residual, mirror_ode_residual, mobius,
    projective_residual, quotient_report, schwarzian, solve_second_order, LatticeSeed, OdeError, OdeProblem,
};
use nvcalc_core::operad::{compose, glue, koszul_sign, Disc, DiscConfiguration, GradedOperation, Point};
use nvcalc_core::{q, qi, NovikovSeries, Truncation, USeries, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(r: &mut ChaCha8Rng) -> i64 {
    let c = r.gen_range(1..=3);
    if r.gen_bool(0.5) {
        c
    } else {
        -c
    }
}

/// `k` terms `c q^{e/2}`, `e` in `lo..=hi`, `|c| <= 3`, known below `q^trunc`.
fn random_series(r: &mut ChaCha8Rng, k: usize, lo: i64, hi: i64, trunc: i64) -> NovikovSeries {
    let terms: Vec<(Q, Q)> = (0..k).map(|_| (q(r.gen_range(lo..=hi), 2), qi(r.gen_range(-3..=3)))).collect();
    NovikovSeries::from_terms(terms, Truncation::At(qi(trunc)))
}

/// Coefficients on the half-integer lattice, psi a unit, at most a simple
/// pole in eta, `z2 psi^2` of order `> -2`.
fn random_problem(r: &mut ChaCha8Rng, trunc: i64) -> OdeProblem {
    let psi = NovikovSeries::constant(qi(nonzero(r))).add(&random_series(r, 3, 1, 2 * trunc, trunc));
    let eta = random_series(r, 3, -2, 2 * trunc, trunc);
    let z2 = random_series(r, 3, -3, 2 * trunc, trunc);
    OdeProblem::new(psi, eta, z2).expect("psi is a unit")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let (mut solved, mut resonant, mut pairs) = (0, 0, 0);
    for n in 0..60 {
        let prob = random_problem(&mut r, 8);
        let (d1, d2) = indicial_roots(&prob).map_err(|e| format!("problem {n}: {e}"))?;
        // the lower root may be resonant, the upper one never is
        for base in [d1, d2] {
            let seed = LatticeSeed::new(base, q(1, 2), vec![qi(1)]).unwrap();
            match solve_second_order(&prob, &seed, &qi(8)) {
                Ok(rho) => {
                    let rep = chain_report(&rho, &prob);
                    ensure(rep.all_pass(), || format!("problem {n}: {rep}"))?;
                    solved += 1;
                }
                Err(OdeError::ResonantExponent { .. }) => resonant += 1,
                Err(e) => return Err(format!("problem {n}: unexpected {e}")),
            }
        }
        match fundamental_pair(&prob, &q(1, 2), &qi(8)) {
            Ok((lo, hi)) => {
                for rho in [&lo, &hi] {
                    let rep = chain_report(rho, &prob);
                    ensure(rep.all_pass(), || format!("problem {n} pair: {rep}"))?;
                }
                let rep = quotient_report(&lo, &hi, &prob);
                ensure(rep.all_pass(), || format!("problem {n} quotient: {rep}"))?;
                pairs += 1;
            }
            Err(OdeError::ResonantExponent { .. }) => {}
            Err(e) => return Err(format!("problem {n}: unexpected {e}")),
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    ensure(solved > 0 && pairs > 0, || "no problem was solved".into())?;
    Ok(format!("60 problems, 120 seeds: {solved} solved, {resonant} resonant; {pairs} quotients, {t:.2?}"))
}

/// `theta'''/theta' - (3/2)(theta''/theta')^2`.
fn schwarzian_oracle(theta: &NovikovSeries) -> NovikovSeries {
    let d1 = theta.d_q();
    let d2 = d1.d_q();
    let d3 = d2.d_q();
    let inv = d1.invert().unwrap();
    let ratio = d2.mul(&inv);
    d3.mul(&inv).sub(&ratio.mul(&ratio).scale(&q(3, 2)))
}

fn criterion_2() -> Outcome {
    let s1 = schwarzian(&NovikovSeries::var()).map_err(|e| e.to_string())?;
    ensure(s1.is_exact_zero(), || format!("S(q) = {}", s1.render()))?;
    let s2 = schwarzian(&NovikovSeries::monomial(qi(1), qi(2))).map_err(|e| e.to_string())?;
    ensure(s2 == NovikovSeries::monomial(q(-3, 2), qi(-2)), || format!("S(q^2) = {}", s2.render()))?;
    let mut r = rng(2);
    let mut done = 0;
    while done < 20 {
        let (a, b, c, d) = (r.gen_range(-3..=3), r.gen_range(-3..=3), r.gen_range(-3..=3), r.gen_range(-3..=3));
        if a * d - b * c == 0 || (c == 0 && d == 0) {
            continue;
        }
        let theta = NovikovSeries::var().add(&random_series(&mut r, 3, 4, 12, 6));
        let m = mobius(&theta, &qi(a), &qi(b), &qi(c), &qi(d)).map_err(|e| e.to_string())?;
        // independent transform
        let lin = |x: i64, y: i64| theta.scale(&qi(x)).add(&NovikovSeries::constant(qi(y)));
        let oracle = lin(a, b).div(&lin(c, d)).map_err(|e| e.to_string())?;
        ensure(m.sub(&oracle).is_zero(), || format!("mobius({a},{b},{c},{d}) differs"))?;
        let (sm, st) = (schwarzian(&m).map_err(|e| e.to_string())?, schwarzian(&theta).map_err(|e| e.to_string())?);
        ensure(sm.sub(&st).is_zero(), || format!("S not invariant: {} vs {}", sm.render(), st.render()))?;
        ensure(st.sub(&schwarzian_oracle(&theta)).is_zero(), || "S disagrees with the oracle".into())?;
        done += 1;
    }
    Ok("S(q) = 0, S(q^2) = -3/2*q^-2, 20 Mobius transforms".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let order = qi(10);
    let fs = [NovikovSeries::poly(&[1]), NovikovSeries::poly(&[1, 1]), NovikovSeries::poly(&[1, 1, 1])];
    let mut n = 0;
    for f in &fs {
        let l = log_derivative_h(f, &order).map_err(|e| e.to_string())?;
        // oracle for l: f' / f with f truncated one order past
        let l_oracle = f.d_q().div(&f.truncate_at(qi(11))).map_err(|e| e.to_string())?;
        ensure(l.sub(&l_oracle).is_zero(), || "l differs from f'/f".into())?;
        for p0 in [0, 1, -1, 2, -2, 3] {
            let a = mirror_a(&qi(p0), f, &order).map_err(|e| e.to_string())?;
            // p0/(p0 h - 1) = -p0 sum (p0 h)^k
            let geo = NovikovSeries::from_terms((0..10).map(|k| (qi(k), -qi(p0).pow(k as i32 + 1))), Truncation::At(qi(10)));
            ensure(a.sub(&geo.sub(&l)).is_zero(), || format!("a differs from the oracle for p0 = {p0}"))?;
            let res = mirror_a_residual(&a, &l);
            ensure(res.is_zero(), || format!("p0 = {p0}, f = {}: residual {}", f.render_in("h"), res.render_in("h")))?;
            n += 1;
        }
        let inv = f.invert_to(&order).map_err(|e| e.to_string())?;
        for (name, eta) in [("1/f", inv.clone()), ("h/f", inv.mul(&NovikovSeries::var()).truncate_at(order.clone()))] {
            let res = mirror_ode_residual(&eta, &l);
            ensure(res.is_zero(), || format!("{name} for f = {}: residual {}", f.render_in("h"), res.render_in("h")))?;
            n += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("{n} exact zeros at h^10, {t:.2?}"))
}

fn two_class(omega: (i64, i64)) -> CohomologyModel {
    let basis = vec![ClassDecl::new("D", 2), ClassDecl::new("M", 2)];
    CohomologyModel::new(basis, Some(vec![qi(omega.0), qi(omega.1)]), None).unwrap()
}

fn criterion_4() -> Outcome {
    let model = two_class((1, 3));
    let mut gw = GwData::zero(2);
    gw.z1 = SeriesVec(vec![NovikovSeries::monomial(qi(1), qi(2)), NovikovSeries::zero()]);
    let (psi, eta) = solve_psi_eta(&model, &gw).map_err(|e| e.to_string())?;
    ensure(psi == NovikovSeries::monomial(qi(1), qi(-3)), || format!("psi = {}", psi.render()))?;
    ensure(eta == NovikovSeries::monomial(qi(-3), qi(-1)), || format!("eta = {}", eta.render()))?;
    let mut r = rng(4);
    for n in 0..20 {
        let model = two_class((nonzero(&mut r), r.gen_range(-3..=3)));
        let v = r.gen_range(-4..=4);
        let zd = NovikovSeries::monomial(qi(nonzero(&mut r)), q(v, 2)).add(&random_series(&mut r, 3, v + 1, v + 10, 6));
        let mut gw = GwData::zero(2);
        gw.z1 = SeriesVec(vec![zd, random_series(&mut r, 3, -2, 10, 6)]);
        let (psi, eta) = solve_psi_eta(&model, &gw).map_err(|e| format!("input {n}: {e}"))?;
        // q^{-1}[omega] = psi z1 - eta [M], componentwise
        let back_d = psi.mul(gw.z1.get(0));
        let back_m = psi.mul(gw.z1.get(1)).sub(&eta);
        let (wd, wm) = (model.omega().unwrap()[0].clone(), model.omega().unwrap()[1].clone());
        ensure(back_d.sub(&NovikovSeries::monomial(wd, qi(-1))).is_zero(), || format!("input {n}: [D] component"))?;
        ensure(back_m.sub(&NovikovSeries::monomial(wm, qi(-1))).is_zero(), || format!("input {n}: [M] component"))?;
    }
    Ok("psi = q^-3, eta = -3*q^-1; 20 round trips".into())
}

fn u(s: NovikovSeries, k: u32) -> USeries {
    USeries::monomial(s, k)
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    for n in 0..20 {
        let prob = random_problem(&mut r, 6);
        let eqm = EqModuleModel::standard(prob.clone()).map_err(|e| e.to_string())?;
        let gm = eqm.gauss_manin().map_err(|e| format!("problem {n}: {e}"))?;
        let ge = USeriesVec(vec![USeries::zero(), u(prob.psi.clone(), 1), USeries::zero()]);
        let ugs = USeriesVec(vec![
            u(prob.z2.mul(&prob.psi).scale(&qi(-4)), 2),
            u(prob.eta.scale(&qi(-1)), 2),
            u(prob.psi.scale(&qi(2)), 2),
        ]);
        ensure(gm.gamma_e.sub(&ge).is_zero(), || format!("problem {n}: Gamma(e)"))?;
        for i in 0..3 {
            ensure(gm.u_gamma_s.get(i).sub(ugs.get(i)).is_zero(), || format!("problem {n}: u Gamma(s) coefficient {i}"))?;
        }
    }
    Ok("Gamma(e) and u Gamma(s) reproduced on 20 problems".into())
}

fn random_degree_one(model: &BVModel, r: &mut ChaCha8Rng) -> SeriesVec {
    let mut v = model.zero();
    for i in 0..model.dim() {
        if model.degree(i) == 1 && r.gen_bool(0.7) {
            v.0[i] = NovikovSeries::monomial(qi(r.gen_range(-3..=3)), qi(r.gen_range(0..=3)));
        }
    }
    v
}

fn criterion_6() -> Outcome {
    let model = bv::polyvector(1, 4);
    let rep = bv::check_bv_axioms(&model);
    ensure(rep.all_pass(), || format!("axioms: {rep}"))?;
    let nabla = Connection::trivial(model.dim());
    let mut r = rng(6);
    for n in 0..20 {
        let alpha = random_degree_one(&model, &mut r);
        let rep = bv::check_gauge(&nabla, &alpha, &model.zero(), &model).map_err(|e| e.to_string())?;
        ensure(rep.all_pass(), || format!("alpha {n}: {rep}"))?;
        let amb = rep.get("minus1-ambiguity").ok_or("missing minus1-ambiguity")?;
        ensure(amb.passed(), || format!("alpha {n}: {amb:?}"))?;
    }
    // injected defects
    let xi = bv::check_bv_axioms(&bv::polyvector_xi_defect(4));
    ensure(!xi.get("delta-bracket").unwrap().passed(), || "xi defect not detected".into())?;
    let aff = bv::check_bv_axioms(&bv::polyvector_affine(4));
    ensure(!aff.get("derivation-bracket").unwrap().passed(), || "affine defect not detected".into())?;
    // a perturbed by p: the residual of [nabla, Delta] is [p, x]
    let p = model.element("t").unwrap();
    let (nt, at) = bv::gauge_change(&nabla, &model.element("t*xi").unwrap(), &model.zero(), &model).unwrap();
    let bad = at.add(&p);
    ensure(!bv::check_delta_nabla(&nt, &bad, &model).all_pass(), || "delta-nabla defect not detected".into())?;
    for i in 0..model.dim() {
        let x = model.basis(i);
        ensure(bv::delta_nabla_residual(&nt, &bad, &model, &x) == model.bracket(&p, &x), || format!("delta-nabla residual on basis {i}"))?;
    }
    // Delta a != 0: the residual of the (-1)-connection formula is (Delta a) x
    let odd = bv::odd_derivation();
    let a = odd.element("a").unwrap();
    let on = Connection::trivial(odd.dim());
    for i in 0..odd.dim() {
        let x = odd.basis(i);
        ensure(bv::minus1_delta_residual(&on, &a, &odd, &x) == odd.mul(&odd.delta(&a), &x), || format!("minus1 residual on basis {i}"))?;
    }
    // product perturbed by q x: Leibniz residual q x
    let mut qm = BVModel::new(vec!["1".into(), "x".into()], vec![0, 0], 0).unwrap();
    qm.set_product(1, 1, qm.basis(1).scale(&NovikovSeries::var()));
    let lp = bv::check_leibniz(&Connection::trivial(2), &qm);
    let c = lp.get("leibniz.product").unwrap();
    ensure(!c.passed() && c.residual.as_deref() == Some(qm.render(&qm.basis(1)).as_str()), || format!("leibniz defect: {c:?}"))?;
    Ok("axioms pass; 20 gauge changes; 5 defects detected with predicted residuals".into())
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    for n in 0..20 {
        let prob = random_problem(&mut r, 6);
        let (model, nabla) = bv::synthetic_bs(&prob, 4);
        let s = model.element("s").unwrap();
        let rep = bv::bs_report(&nabla, &s, &prob, &model);
        for name in ["nonlinear-a", "nablac-s[c=-1]", "nablac-s[c=0]", "nablac-s[c=1]", "nabla1-2"] {
            let c = rep.get(name).ok_or_else(|| format!("missing {name}"))?;
            ensure(c.passed(), || format!("problem {n}: {c:?}"))?;
        }
        let so = bv::second_order_report(&nabla, &s, &prob, &model);
        let c = so.get("2nd-order").ok_or("missing 2nd-order")?;
        ensure(c.passed(), || format!("problem {n}: {c:?}"))?;
        // scalar shadow
        let (sm, sn) = bv::scalar_shadow();
        let lambda = random_series(&mut r, 4, -2, 12, 6);
        let res = bv::bs_residual(&sn, &sm.unit().scale(&lambda), &prob, &sm);
        ensure(*res.get(0) == projective_residual(&lambda, &prob), || format!("problem {n}: scalar shadow differs"))?;
    }
    Ok("K[s]/(s^4) chain and scalar shadow on 20 problems".into())
}

fn disc(c: (i64, i64), rad: i64) -> Disc<Q> {
    Disc { center: Point::new(q(c.0, 16), q(c.1, 16)), radius: q(rad, 16) }
}

/// One to three discs in distinct cells around `+-1/2`, `+-i/2`, quarter-turn framings.
fn random_config(r: &mut ChaCha8Rng) -> DiscConfiguration<Q> {
    let mut cells = vec![(8i64, 0i64), (-8, 0), (0, 8), (0, -8)];
    let k = r.gen_range(1..=3);
    let mut discs = Vec::new();
    let mut framings = Vec::new();
    for _ in 0..k {
        let (x, y) = cells.remove(r.gen_range(0..cells.len()));
        discs.push(disc((x + r.gen_range(-1..=1), y + r.gen_range(-1..=1)), r.gen_range(1..=4)));
        framings.push(q(r.gen_range(0..4), 4));
    }
    DiscConfiguration::new(discs).with_framings(framings)
}

fn to_float(c: &DiscConfiguration<Q>) -> DiscConfiguration<f64> {
    use num_traits::ToPrimitive;
    let f = |x: &Q| x.to_f64().unwrap();
    let discs = c
        .discs
        .iter()
        .map(|d| Disc { center: Point::new(f(&d.center.re), f(&d.center.im)), radius: f(&d.radius) })
        .collect();
    let mut out = DiscConfiguration::new(discs);
    out.framings = c.framings.clone();
    out
}

/// Moves `phi2` leftwards past `phi1` and each prefix input, one transposition at a time.
fn koszul_oracle(d1: i32, d2: i32, prefix: &[i32]) -> i32 {
    let mut sign = 1;
    for &d in std::iter::once(&d1).chain(prefix) {
        if d % 2 != 0 && d2 % 2 != 0 {
            sign = -sign;
        }
    }
    sign
}

fn random_op(degrees: &[i32], arity: usize, degree: i32, r: &mut ChaCha8Rng) -> GradedOperation {
    let mut op = GradedOperation::new(degrees.to_vec(), arity, degree);
    let dim = degrees.len();
    for inputs in op.tuples().collect::<Vec<_>>() {
        let want = degree + inputs.iter().map(|&i| degrees[i]).sum::<i32>();
        let value = (0..dim).map(|k| if degrees[k] == want { qi(r.gen_range(-2..=2)) } else { qi(0) }).collect();
        op.set(inputs, value).unwrap();
    }
    op
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let id = DiscConfiguration::<Q>::identity();
    for n in 0..100 {
        let (a, b, c) = (random_config(&mut r), random_config(&mut r), random_config(&mut r));
        let i = r.gen_range(0..a.arity());
        let j = r.gen_range(0..b.arity());
        let e = |x: nvcalc_core::operad::OperadError| format!("triple {n}: {x}");
        ensure(glue(&a, i, &id).map_err(e)? == a && glue(&id, 0, &a).map_err(e)? == a, || format!("triple {n}: identity law"))?;
        let left = glue(&glue(&a, i, &b).map_err(e)?, i + j, &c).map_err(e)?;
        let right = glue(&a, i, &glue(&b, j, &c).map_err(e)?).map_err(e)?;
        ensure(left == right, || format!("triple {n}: rational associativity"))?;
        let (fa, fb, fc) = (to_float(&a), to_float(&b), to_float(&c));
        let fl = glue(&glue(&fa, i, &fb).map_err(e)?, i + j, &fc).map_err(e)?;
        let fr = glue(&fa, i, &glue(&fb, j, &fc).map_err(e)?).map_err(e)?;
        ensure(fl.close(&fr), || format!("triple {n}: float associativity"))?;
        ensure(fl.close(&to_float(&left)), || format!("triple {n}: float and rational disagree"))?;
    }
    let mut signs = 0;
    for d1 in 0..=1 {
        for d2 in 0..=1 {
            for m in 1..=3usize {
                for i1 in 0..m {
                    for mask in 0..(1u32 << i1) {
                        let prefix: Vec<i32> = (0..i1).map(|k| ((mask >> k) & 1) as i32).collect();
                        let got = koszul_sign(d1, d2, i1, &prefix).map_err(|e| e.to_string())?;
                        ensure(got == koszul_oracle(d1, d2, &prefix), || format!("sign({d1},{d2},{i1},{prefix:?})"))?;
                        signs += 1;
                    }
                }
            }
        }
    }
    let mut comps = 0;
    for dim in 1..=4usize {
        for mask in 0..(1u32 << dim) {
            let degrees: Vec<i32> = (0..dim).map(|k| ((mask >> k) & 1) as i32).collect();
            for dp in -1..=1 {
                for dq in -1..=1 {
                    for dr in -1..=1 {
                        let phi = random_op(&degrees, 2, dp, &mut r);
                        let psi = random_op(&degrees, 2, dq, &mut r);
                        let chi = random_op(&degrees, 1, dr, &mut r);
                        for i in 0..2 {
                            let pc = compose(&phi, i, &psi).unwrap();
                            for j in 0..2 {
                                let left = compose(&pc, i + j, &chi).unwrap();
                                let right = compose(&phi, i, &compose(&psi, j, &chi).unwrap()).unwrap();
                                ensure(left == right, || format!("sequential dim {dim} degrees {degrees:?}"))?;
                                comps += 1;
                            }
                            let other = 1 - i;
                            let slot = if other > i { other + 1 } else { other };
                            let left = compose(&pc, slot, &chi).unwrap();
                            let right = compose(&compose(&phi, other, &chi).unwrap(), i, &psi).unwrap();
                            let sign = if (dq * dr) % 2 == 0 { qi(1) } else { qi(-1) };
                            ensure(left == right.scale(&sign), || format!("parallel dim {dim} degrees {degrees:?}"))?;
                            comps += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("100 triples (rational and float), {signs} signs, {comps} composition identities"))
}

fn nvcalc(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_nvcalc")).args(args).output().expect("nvcalc runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn criterion_9() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tasks");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    ensure(!files.is_empty(), || "no bundled tasks".into())?;
    for f in &files {
        let f = f.to_str().unwrap();
        for fmt in ["json", "text"] {
            let (c1, o1) = nvcalc(&["run", f, "--output", fmt]);
            let (c2, o2) = nvcalc(&["run", f, "--output", fmt]);
            ensure(c1 == 0 && c2 == 0, || format!("{f}: exit {c1}"))?;
            ensure(o1 == o2, || format!("{f}: {fmt} output differs between runs"))?;
        }
    }
    let cases: Vec<(&str, String, i32)> = vec![
        ("malformed exponent", r#"{"problem": {"psi": {"terms": [{"exp": "1/0", "coeff": "1"}]}, "eta": "0", "z2": "0"}}"#.into(), 2),
        ("invalid json", "{".into(), 2),
        ("unknown field", r#"{"problem": {"psi": "1", "eta": "0", "z2": "0"}, "bogus": 1}"#.into(), 2),
        ("exact rho", r#"{"problem": {"psi": "1", "eta": "0", "z2": "0"}, "rho": "1 + q"}"#.into(), 3),
        ("resonant seed", r#"{"problem": {"psi": "1 + O(q^8)", "eta": "-1/2*q^-1 + O(q^8)", "z2": "1 + O(q^8)"}, "solve": {"base": "0", "step": "1/2", "coeffs": ["1"], "order": "8"}}"#.into(), 4),
        ("failing residual", r#"{"problem": {"psi": "1", "eta": "0", "z2": "0"}, "rho": "1 + q^2 + O(q^8)"}"#.into(), 1),
    ];
    for (name, body, want) in &cases {
        let p = scratch(&format!("acceptance-{}.json", name.replace(' ', "-")), body);
        let (code, _) = nvcalc(&["ode", p.to_str().unwrap()]);
        ensure(code == *want, || format!("{name}: exit {code}, expected {want}"))?;
    }
    let zc = scratch(
        "acceptance-zconflict.json",
        r#"{"outer": {"discs": [{"center": [0, 0], "radius": "1/2"}], "z_point": ["3/4", 0]}, "index": 0, "inner": {"discs": [{"center": [0, 0], "radius": "1/2"}], "z_point": [0, "3/4"]}}"#,
    );
    let (code, _) = nvcalc(&["operad", "glue", zc.to_str().unwrap()]);
    ensure(code == 4, || format!("z conflict: exit {code}, expected 4"))?;
    let (code, _) = nvcalc(&["gw", "/nonexistent/task.json"]);
    ensure(code == 2, || format!("missing file: exit {code}, expected 2"))?;
    let (code, _) = nvcalc(&["run", dir.join("riccati_chain.json").to_str().unwrap(), "--trunc", "1/0"]);
    ensure(code == 2, || format!("bad --trunc: exit {code}, expected 2"))?;
    Ok(format!("{} bundled tasks byte-identical; {} exit codes", files.len(), cases.len() + 3))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("equation chain", criterion_1),
        ("schwarzian", criterion_2),
        ("mirror", criterion_3),
        ("psi/eta solver", criterion_4),
        ("gauss-manin", criterion_5),
        ("bv", criterion_6),
        ("borman-sheridan", criterion_7),
        ("operad", criterion_8),
        ("cli", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS criterion {} ({name}): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {msg}", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
