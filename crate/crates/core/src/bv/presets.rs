//! Small models used by the tests and the CLI.

use crate::linalg::SeriesVec;
use crate::novikov::{qi, NovikovSeries};
use crate::ode::OdeProblem;

use super::{sign, BVModel, Connection};

struct Monomial {
    exps: Vec<usize>,
    mask: u32,
}

fn monomial_name(m: &Monomial, vars: usize) -> String {
    let var = |s: &str, i: usize| if vars == 1 { s.to_string() } else { format!("{s}{}", i + 1) };
    let mut parts = Vec::new();
    for (i, &a) in m.exps.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(var("t", i)),
            _ => parts.push(format!("{}^{a}", var("t", i))),
        }
    }
    for i in 0..vars {
        if m.mask & (1 << i) != 0 {
            parts.push(var("xi", i));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn monomials(vars: usize, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << vars) {
        let total = n.pow(vars as u32);
        for code in 0..total {
            let mut c = code;
            let exps = (0..vars)
                .map(|_| {
                    let a = c % n;
                    c /= n;
                    a
                })
                .collect();
            out.push(Monomial { exps, mask });
        }
    }
    out
}

fn find(ms: &[Monomial], exps: &[usize], mask: u32) -> usize {
    ms.iter().position(|m| m.exps == exps && m.mask == mask).expect("monomial in range")
}

/// Transpositions needed to sort `xi_S xi_T` into increasing order.
fn wedge_inversions(s: u32, t: u32) -> i32 {
    let mut inv = 0;
    for i in 0..32 {
        if s & (1 << i) != 0 {
            inv += (t & ((1u32 << i) - 1)).count_ones() as i32;
        }
    }
    inv
}

/// `K[t_1..t_m]/(t_i^n) (x) Lambda[xi_1..xi_m]`, `|xi_i| = 1`, without `Delta`.
fn polyvector_algebra(vars: usize, n: usize) -> (BVModel, Vec<Monomial>) {
    assert!((1..=4).contains(&vars) && n >= 1);
    let ms = monomials(vars, n);
    let names = ms.iter().map(|m| monomial_name(m, vars)).collect();
    let degrees = ms.iter().map(|m| m.mask.count_ones() as i32).collect();
    let unit = find(&ms, &vec![0; vars], 0);
    let mut model = BVModel::new(names, degrees, unit).expect("valid basis");
    let dim = ms.len();
    for (i, a) in ms.iter().enumerate() {
        for (j, b) in ms.iter().enumerate() {
            let exps: Vec<usize> = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
            let v = if a.mask & b.mask != 0 || exps.iter().any(|&e| e >= n) {
                SeriesVec::zero(dim)
            } else {
                let k = find(&ms, &exps, a.mask | b.mask);
                SeriesVec::single(dim, k, NovikovSeries::constant(sign(wedge_inversions(a.mask, b.mask))))
            };
            model.set_product_entry(i, j, v);
        }
    }
    (model, ms)
}

/// Polyvector fields on `m` truncated variables with
/// `Delta = sum_i t_i d_{t_i} d_{xi_i}`. For two or more variables the
/// element `k = xi_1 xi_2` is registered.
pub fn polyvector(vars: usize, n: usize) -> BVModel {
    let (mut model, ms) = polyvector_algebra(vars, n);
    let dim = ms.len();
    for (i, m) in ms.iter().enumerate() {
        let mut v = SeriesVec::zero(dim);
        for x in 0..vars {
            if m.mask & (1 << x) != 0 && m.exps[x] > 0 {
                let before = (m.mask & ((1u32 << x) - 1)).count_ones() as i32;
                let k = find(&ms, &m.exps, m.mask & !(1 << x));
                let c = sign(before) * qi(m.exps[x] as i64);
                v.0[k] = v.0[k].add(&NovikovSeries::constant(c));
            }
        }
        model.set_delta(i, v);
    }
    if vars >= 2 {
        let k = find(&ms, &vec![0; vars], 0b11);
        model.set_element("k", model.basis(k));
    }
    model
}

/// One variable, `Delta(t^i xi) = i t^{i-1}`: not compatible with `t^n = 0`.
pub fn polyvector_affine(n: usize) -> BVModel {
    let (mut model, ms) = polyvector_algebra(1, n);
    let dim = ms.len();
    for (i, m) in ms.iter().enumerate() {
        if m.mask == 1 && m.exps[0] > 0 {
            let k = find(&ms, &[m.exps[0] - 1], 0);
            model.set_delta(i, SeriesVec::single(dim, k, NovikovSeries::constant(qi(m.exps[0] as i64))));
        }
    }
    model
}

/// The one-variable polyvector bracket kept as a supplied table while
/// `Delta` is replaced by `d_xi`.
pub fn polyvector_xi_defect(n: usize) -> BVModel {
    let mut model = polyvector(1, n);
    model.freeze_bracket();
    let (_, ms) = polyvector_algebra(1, n);
    let dim = ms.len();
    for (i, m) in ms.iter().enumerate() {
        let v = if m.mask == 1 { SeriesVec::basis(dim, find(&ms, &m.exps, 0)) } else { SeriesVec::zero(dim) };
        model.set_delta(i, v);
    }
    model
}

/// `K[s]/(s^n)` in degree 0 with `Delta = 0` and the connection determined by
/// `nabla s = psi s s - eta s - 4 z2 psi e`. Registers `s`.
pub fn synthetic_bs(prob: &OdeProblem, n: usize) -> (BVModel, Connection) {
    assert!(n >= 2);
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "s".to_string(),
            _ => format!("s^{k}"),
        })
        .collect();
    let mut model = BVModel::new(names, vec![0; n], 0).expect("valid basis");
    for i in 1..n {
        for j in 1..n {
            let v = if i + j < n { model.basis(i + j) } else { model.zero() };
            model.set_product_entry(i, j, v);
        }
    }
    let s = model.basis(1);
    let nabla_s = model
        .mul(&s, &s)
        .scale(&prob.psi)
        .sub(&s.scale(&prob.eta))
        .sub(&model.unit().scale(&prob.z2.mul(&prob.psi).scale(&qi(4))));
    let mut linear = vec![model.zero(); n];
    let mut power = model.unit();
    for (k, l) in linear.iter_mut().enumerate().skip(1) {
        // d(s^k) = k s^{k-1} nabla s
        *l = model.mul(&power, &nabla_s).scale_q(&qi(k as i64));
        power = model.mul(&power, &s);
    }
    model.set_element("s", s);
    (model, Connection { linear })
}

/// The one-dimensional algebra `K e` with `nabla = d_q`.
pub fn scalar_shadow() -> (BVModel, Connection) {
    let model = BVModel::new(vec!["e".into()], vec![0], 0).expect("valid basis");
    (model, Connection::trivial(1))
}

/// `Lambda[y] (x) K[x]/(x^2)` with `|x| = 0`, `|y| = -1` and the odd derivation
/// `Delta = y x d_x`. Registers `a = x`, for which `Delta a = x y`.
pub fn odd_derivation() -> BVModel {
    let names = ["1", "x", "y", "x*y"].iter().map(|s| s.to_string()).collect();
    let mut model = BVModel::new(names, vec![0, 0, -1, -1], 0).expect("valid basis");
    model.set_product(1, 2, model.basis(3));
    model.set_delta(1, model.basis(3));
    model.set_element("a", model.basis(1));
    model
}
