//! Greatest common divisors in `K[u, v]`.
//!
//! Polynomials are viewed in `K[v][u]`: the gcd is the product of the gcd of
//! the contents (univariate in `v`) and the primitive part of the last
//! nonzero remainder of a primitive pseudo-remainder sequence in `u`.

use super::upoly;
use crate::quatpoly::{QPoly, RPoly, Var};
use crate::scalar::Scalar;

fn content_u<S: Scalar>(p: &RPoly<S>) -> Vec<S> {
    let du = p.degu().unwrap_or(0);
    let mut g: Vec<S> = Vec::new();
    for k in 0..=du {
        let c = upoly::from_rpoly(&p.coeff_in(Var::U, k), Var::V);
        g = upoly::gcd(&g, &c);
        if upoly::is_one(&g) {
            break;
        }
    }
    g
}

fn primitive_u<S: Scalar>(p: &RPoly<S>) -> (Vec<S>, RPoly<S>) {
    let c = content_u(p);
    let divisor = upoly::to_rpoly(&c, Var::V);
    let prim = p.div_exact(&divisor).expect("content divides every coefficient");
    (c, prim)
}

/// Pseudo-remainder of `f` by `g` in `u`: a multiple of `f` reduced below
/// `deg_u g` using only polynomial multiples of `g`.
fn pseudo_rem<S: Scalar>(f: &RPoly<S>, g: &RPoly<S>) -> RPoly<S> {
    let dg = g.degu().expect("nonzero divisor");
    let lg = g.lead_in(Var::U);
    let mut r = f.clone();
    while let Some(dr) = r.degu().filter(|d| *d >= dg) {
        let lr = r.lead_in(Var::U);
        r = &(&lg * &r) - &(&lr * &g.mul_monomial(dr - dg, 0));
    }
    r
}

/// Scales so that the leading term in graded lexicographic order is 1.
pub fn normalize<S: Scalar>(p: &RPoly<S>) -> RPoly<S> {
    match p.lead_term() {
        Some((_, c)) => p.scale_base(&c.inv().expect("nonzero lead")),
        None => RPoly::zero(),
    }
}

/// Normalized gcd of two real polynomials; `gcd(0, 0) = 0`.
pub fn gcd<S: Scalar>(a: &RPoly<S>, b: &RPoly<S>) -> RPoly<S> {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let (ca, pa) = primitive_u(a);
    let (cb, pb) = primitive_u(b);
    let content = upoly::to_rpoly(&upoly::gcd(&ca, &cb), Var::V);
    let (mut f, mut g) = if pa.degu() >= pb.degu() { (pa, pb) } else { (pb, pa) };
    let primitive = loop {
        if g.degu() == Some(0) {
            break RPoly::one();
        }
        let r = pseudo_rem(&f, &g);
        if r.is_zero() {
            break g;
        }
        let (_, r) = primitive_u(&r);
        f = g;
        g = r;
    };
    normalize(&(&content * &primitive))
}

/// Normalized gcd of a list; zero for an empty or all-zero list.
pub fn gcd_all<'a, S: Scalar>(polys: impl IntoIterator<Item = &'a RPoly<S>>) -> RPoly<S> {
    let mut g = RPoly::zero();
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Real gcd of the four components of `q` together with `r`.
pub fn gcd_with_components<S: Scalar>(q: &QPoly<S>, r: &RPoly<S>) -> RPoly<S> {
    let parts = q.components();
    gcd_all(parts.iter().chain(std::iter::once(r)))
}
