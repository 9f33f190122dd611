//! Dense univariate polynomials over a [`Scalar`], ascending coefficients.

use crate::quatpoly::{RPoly, Var};
use crate::scalar::Scalar;

pub(crate) type Dense<S> = Vec<S>;

pub(crate) fn trim<S: Scalar>(mut p: Dense<S>) -> Dense<S> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn degree<S: Scalar>(p: &[S]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Coefficients of an `RPoly` that involves only `var`.
pub(crate) fn from_rpoly<S: Scalar>(p: &RPoly<S>, var: Var) -> Dense<S> {
    let n = p.deg(var).map_or(0, |d| d as usize + 1);
    let mut out = vec![S::zero(); n];
    for (&(i, j), c) in p.terms() {
        let e = match var {
            Var::U => i,
            Var::V => j,
        };
        out[e as usize] = c.clone();
    }
    trim(out)
}

pub(crate) fn to_rpoly<S: Scalar>(p: &[S], var: Var) -> RPoly<S> {
    RPoly::from_univariate(var, p.iter().cloned())
}

pub(crate) fn sub<S: Scalar>(a: &[S], b: &[S]) -> Dense<S> {
    let n = a.len().max(b.len());
    let zero = S::zero();
    trim((0..n)
        .map(|k| a.get(k).unwrap_or(&zero).sub_ref(b.get(k).unwrap_or(&zero)))
        .collect())
}

pub(crate) fn mul<S: Scalar>(a: &[S], b: &[S]) -> Dense<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    trim(out)
}

pub(crate) fn scale<S: Scalar>(a: &[S], s: &S) -> Dense<S> {
    trim(a.iter().map(|c| c.mul_ref(s)).collect())
}

/// `(q, r)` with `a = q b + r`, `deg r < deg b`. Panics on `b = 0`.
pub(crate) fn div_rem<S: Scalar>(a: &[S], b: &[S]) -> (Dense<S>, Dense<S>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv().expect("trimmed polynomial has nonzero lead");
    let mut r = a.to_vec();
    let mut q = vec![S::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r).filter(|d| *d >= db) {
        let c = r[dr].mul_ref(&lead_inv);
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] = r[k + shift].sub_ref(&c.mul_ref(bk));
        }
        // the lead cancels exactly in exact arithmetic; force it for floats
        r[dr] = S::zero();
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn monic<S: Scalar>(a: &[S]) -> Dense<S> {
    match a.last() {
        Some(l) => scale(a, &l.inv().expect("nonzero lead")),
        None => Vec::new(),
    }
}

/// Monic greatest common divisor; zero when both inputs vanish.
pub(crate) fn gcd<S: Scalar>(a: &[S], b: &[S]) -> Dense<S> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub(crate) fn derivative<S: Scalar>(a: &[S]) -> Dense<S> {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c.mul_ref(&S::from_i64(k as i64))).collect())
}

pub(crate) fn is_one<S: Scalar>(a: &[S]) -> bool {
    a.len() == 1 && a[0].is_one()
}

/// Square-free decomposition `a = lead * prod_i f_i^i` of a nonzero
/// polynomial (Yun), as `(f_i, i)` with nonconstant monic `f_i`.
pub(crate) fn square_free<S: Scalar>(a: &[S]) -> Vec<(Dense<S>, u32)> {
    let a = monic(a);
    let mut out = Vec::new();
    if degree(&a).is_none_or(|d| d == 0) {
        return out;
    }
    let da = derivative(&a);
    let g = gcd(&a, &da);
    let (mut b, _) = div_rem(&a, &g);
    let (c, _) = div_rem(&da, &g);
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    loop {
        let h = gcd(&b, &d);
        let (b_next, _) = div_rem(&b, &h);
        if !is_one(&h) && degree(&h).is_some_and(|x| x > 0) {
            out.push((h.clone(), i));
        }
        if degree(&b_next).is_none_or(|x| x == 0) {
            break;
        }
        let (c_next, _) = div_rem(&d, &h);
        d = sub(&c_next, &derivative(&b_next));
        b = b_next;
        i += 1;
    }
    out
}
