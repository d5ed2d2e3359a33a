use std::collections::BTreeMap;

use num_traits::Zero;

use super::OperadError;
use crate::novikov::{qi, Q};

/// `(-1)^{(|phi1| + |x_1| + ... + |x_{i1-1}|) |phi2|}`, where `prefix` holds
/// the degrees of the `i1` inputs before the insertion slot.
pub fn koszul_sign(deg_phi1: i32, deg_phi2: i32, i1: usize, prefix: &[i32]) -> Result<i32, OperadError> {
    if prefix.len() != i1 {
        return Err(OperadError::InvalidInput(format!("prefix has {} degrees, expected {i1}", prefix.len())));
    }
    let s: i32 = deg_phi1 + prefix.iter().sum::<i32>();
    Ok(if (s * deg_phi2).rem_euclid(2) == 0 { 1 } else { -1 })
}

/// A multilinear map `V^{(x) m} -> V` on a graded space `V` with a fixed
/// basis, stored as its values on basis tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperation {
    pub degrees: Vec<i32>,
    pub arity: usize,
    pub degree: i32,
    table: BTreeMap<Vec<usize>, Vec<Q>>,
}

fn tuples(dim: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(m as u32);
    (0..total).map(move |mut c| {
        let mut v = vec![0; m];
        for slot in v.iter_mut().rev() {
            *slot = c % dim;
            c /= dim;
        }
        v
    })
}

impl GradedOperation {
    pub fn new(degrees: Vec<i32>, arity: usize, degree: i32) -> Self {
        GradedOperation { degrees, arity, degree, table: BTreeMap::new() }
    }

    /// The identity map of degree 0.
    pub fn identity(degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        let mut op = Self::new(degrees, 1, 0);
        for i in 0..n {
            let mut v = vec![Q::zero(); n];
            v[i] = qi(1);
            op.table.insert(vec![i], v);
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Sets the value on a basis tuple. Every nonzero output component must
    /// have degree `|phi| + sum |x_k|`.
    pub fn set(&mut self, inputs: Vec<usize>, value: Vec<Q>) -> Result<(), OperadError> {
        if inputs.len() != self.arity || value.len() != self.dim() || inputs.iter().any(|&i| i >= self.dim()) {
            return Err(OperadError::InvalidInput("tuple or value has the wrong shape".into()));
        }
        let want = self.degree + inputs.iter().map(|&i| self.degrees[i]).sum::<i32>();
        for (k, c) in value.iter().enumerate() {
            if !c.is_zero() && self.degrees[k] != want {
                return Err(OperadError::DegreeMismatch(format!(
                    "output component {k} has degree {}, expected {want}",
                    self.degrees[k]
                )));
            }
        }
        if value.iter().all(Zero::is_zero) {
            self.table.remove(&inputs);
        } else {
            self.table.insert(inputs, value);
        }
        Ok(())
    }

    pub fn get(&self, inputs: &[usize]) -> Vec<Q> {
        self.table.get(inputs).cloned().unwrap_or_else(|| vec![Q::zero(); self.dim()])
    }

    /// Basis tuples of the right length, in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> {
        tuples(self.dim(), self.arity)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Q>)> {
        self.table.iter()
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::new(self.degrees.clone(), self.arity, self.degree);
        for (k, v) in &self.table {
            let w: Vec<Q> = v.iter().map(|x| x * c).collect();
            if !w.iter().all(Zero::is_zero) {
                out.table.insert(k.clone(), w);
            }
        }
        out
    }
}

/// `(phi1 o_{i1} phi2)(x_1, ...) = sign * phi1(x_1, ..., phi2(x_{i1}, ...), ...)`
/// with the sign of [`koszul_sign`].
pub fn compose(phi1: &GradedOperation, i1: usize, phi2: &GradedOperation) -> Result<GradedOperation, OperadError> {
    if i1 >= phi1.arity {
        return Err(OperadError::IndexOutOfRange { index: i1, arity: phi1.arity });
    }
    if phi1.degrees != phi2.degrees {
        return Err(OperadError::InvalidInput("operations act on different graded spaces".into()));
    }
    let (m1, m2) = (phi1.arity, phi2.arity);
    let dim = phi1.dim();
    let mut out = GradedOperation::new(phi1.degrees.clone(), m1 + m2 - 1, phi1.degree + phi2.degree);
    for xs in tuples(dim, m1 + m2 - 1) {
        let inner = phi2.get(&xs[i1..i1 + m2]);
        if inner.iter().all(Zero::is_zero) {
            continue;
        }
        let prefix: Vec<i32> = xs[..i1].iter().map(|&i| phi1.degrees[i]).collect();
        let sign = qi(koszul_sign(phi1.degree, phi2.degree, i1, &prefix)? as i64);
        let mut acc = vec![Q::zero(); dim];
        let mut args: Vec<usize> = xs[..i1].to_vec();
        args.push(0);
        args.extend_from_slice(&xs[i1 + m2..]);
        for (k, c) in inner.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            args[i1] = k;
            if let Some(v) = phi1.table.get(&args) {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += c * b * &sign;
                }
            }
        }
        if !acc.iter().all(Zero::is_zero) {
            out.table.insert(xs, acc);
        }
    }
    Ok(out)
}
