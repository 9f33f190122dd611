//! Factorization of univariate real polynomials into monic real factors of
//! degree 1 and 2.
//!
//! The exact route works in the current square-root tower and may adjoin
//! further square roots. It splits off multiplicities (Yun), reduces to
//! rational coefficients by taking the norm over the Galois conjugates,
//! factors the norm over the rationals from recognized root groups, pulls the
//! factors back with gcds, and finishes with the quadratic formula or a
//! Ferrari pairing for quartics. When any step fails the result degrades to a
//! floating-point factorization.

use std::collections::BTreeMap;

use super::roots::{classify, complex_roots, C64};
use super::upoly::{self, Dense};
use super::RealPolyError;
use crate::quatpoly::{RPoly, Var};
use crate::scalar::{Approx, Backend, Scalar};

/// Largest norm degree the exact route attempts.
const MAX_NORM_DEGREE: usize = 32;
/// Imaginary parts below this (relative) count as real roots.
const REAL_ROOT_TOL: f64 = 1e-7;

/// `input = scale * prod factor^multiplicity`, with monic factors of degree 1
/// or 2 and every quadratic factor irreducible over the reals.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFactorization<S: Scalar> {
    pub var: Var,
    pub scale: S,
    pub factors: Vec<(RPoly<S>, u32)>,
    pub backend: Backend,
}

impl<S: Scalar> RealFactorization<S> {
    pub fn reconstruct(&self) -> RPoly<S> {
        let mut out = RPoly::constant(self.scale.clone());
        for (f, m) in &self.factors {
            out = &out * &f.pow(*m);
        }
        out
    }

    /// Factors listed with repetition.
    pub fn expanded(&self) -> Vec<RPoly<S>> {
        self.factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.clone(), *m as usize))
            .collect()
    }

    /// Largest coefficient difference between the product and `target`.
    pub fn residual(&self, target: &RPoly<S>) -> f64 {
        let mut diff: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (m, c) in self.reconstruct().terms() {
            *diff.entry(*m).or_default() += c.to_f64();
        }
        for (m, c) in target.terms() {
            *diff.entry(*m).or_default() -= c.to_f64();
        }
        diff.values().fold(0.0, |w, d| w.max(d.abs()))
    }
}

/// Result of [`factor_real_univariate`].
#[derive(Debug, Clone, PartialEq)]
pub enum FactorOutcome<S: Scalar> {
    /// Factors with coefficients in the input's scalar type.
    Factored(RealFactorization<S>),
    /// Exact factorization was out of reach; floating-point factors instead.
    Degraded(RealFactorization<Approx>),
}

impl<S: Scalar> FactorOutcome<S> {
    pub fn backend(&self) -> Backend {
        match self {
            FactorOutcome::Factored(f) => f.backend,
            FactorOutcome::Degraded(f) => f.backend,
        }
    }

    pub fn factored(self) -> Option<RealFactorization<S>> {
        match self {
            FactorOutcome::Factored(f) => Some(f),
            FactorOutcome::Degraded(_) => None,
        }
    }
}

fn univariate_var<S: Scalar>(r: &RPoly<S>) -> Result<Var, RealPolyError> {
    if r.is_free_of(Var::V) {
        Ok(Var::U)
    } else if r.is_free_of(Var::U) {
        Ok(Var::V)
    } else {
        Err(RealPolyError::NotUnivariate)
    }
}

/// Factors a nonzero univariate polynomial into real linear and quadratic
/// factors.
pub fn factor_real_univariate<S: Scalar>(r: &RPoly<S>) -> Result<FactorOutcome<S>, RealPolyError> {
    if r.is_zero() {
        return Err(RealPolyError::ZeroPolynomial);
    }
    let var = univariate_var(r)?;
    let dense = upoly::from_rpoly(r, var);
    let scale = dense.last().expect("nonzero").clone();
    let monic = upoly::monic(&dense);
    if S::BACKEND == Backend::Approx {
        let factors = numeric_factors(&monic.iter().map(Scalar::to_f64).collect::<Vec<_>>())
            .into_iter()
            .map(|(f, m)| (f.into_iter().map(|x| S::recognize(x).unwrap_or_else(S::zero)).collect::<Vec<_>>(), m))
            .collect();
        return Ok(FactorOutcome::Factored(finish(var, scale, factors, Backend::Approx)));
    }
    match exact_factors(&monic) {
        Some(factors) => Ok(FactorOutcome::Factored(finish(var, scale, factors, S::BACKEND))),
        None => {
            let factors = numeric_factors(&monic.iter().map(Scalar::to_f64).collect::<Vec<_>>())
                .into_iter()
                .map(|(f, m)| (f.into_iter().map(Approx).collect::<Vec<_>>(), m))
                .collect();
            Ok(FactorOutcome::Degraded(finish(var, Approx(scale.to_f64()), factors, Backend::Approx)))
        }
    }
}

fn finish<S: Scalar>(var: Var, scale: S, mut factors: Vec<(Dense<S>, u32)>, backend: Backend) -> RealFactorization<S> {
    factors.sort_by(|(a, ma), (b, mb)| {
        let ka: Vec<f64> = a.iter().rev().map(Scalar::to_f64).collect();
        let kb: Vec<f64> = b.iter().rev().map(Scalar::to_f64).collect();
        a.len()
            .cmp(&b.len())
            .then_with(|| ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal))
            .then(ma.cmp(mb))
    });
    // merge equal factors coming from separate numeric roots
    let mut merged: Vec<(Dense<S>, u32)> = Vec::new();
    for (f, m) in factors {
        match merged.last_mut() {
            Some((g, n)) if *g == f => *n += m,
            _ => merged.push((f, m)),
        }
    }
    RealFactorization {
        var,
        scale,
        factors: merged.into_iter().map(|(f, m)| (upoly::to_rpoly(&f, var), m)).collect(),
        backend,
    }
}

/// Linear and quadratic factors of roots computed in binary64.
fn numeric_factors(monic: &[f64]) -> Vec<(Vec<f64>, u32)> {
    let roots = complex_roots(monic);
    let (real, pairs) = classify(&roots, REAL_ROOT_TOL);
    let mut out: Vec<(Vec<f64>, u32)> = real.into_iter().map(|r| (vec![-r, 1.0], 1)).collect();
    for z in pairs {
        out.push((vec![z.norm_sqr(), -2.0 * z.re, 1.0], 1));
    }
    out
}

fn exact_factors<S: Scalar>(monic: &[S]) -> Option<Vec<(Dense<S>, u32)>> {
    let mut out = Vec::new();
    for (part, mult) in upoly::square_free(monic) {
        for f in split_square_free(&part)? {
            out.push((f, mult));
        }
    }
    Some(out)
}

/// Monic linear and irreducible quadratic factors of a square-free monic
/// polynomial, or `None` when they leave every reachable tower.
fn split_square_free<S: Scalar>(f: &[S]) -> Option<Vec<Dense<S>>> {
    match upoly::degree(f) {
        None | Some(0) => return Some(Vec::new()),
        Some(1) => return Some(vec![f.to_vec()]),
        Some(2) => return split_quadratic(f),
        _ => {}
    }
    let mut out = Vec::new();
    for k in field_factors(f)? {
        match upoly::degree(&k) {
            Some(0) | None => {}
            Some(1) => out.push(k),
            Some(2) => out.extend(split_quadratic(&k)?),
            Some(4) => {
                let (a, b) = ferrari(&k)?;
                out.extend(split_quadratic(&a)?);
                out.extend(split_quadratic(&b)?);
            }
            _ => return None,
        }
    }
    Some(out)
}

fn split_quadratic<S: Scalar>(f: &[S]) -> Option<Vec<Dense<S>>> {
    // u^2 + b u + c
    let (c, b) = (&f[0], &f[1]);
    let disc = b.mul_ref(b).sub_ref(&c.mul_ref(&S::from_i64(4)));
    if disc.signum() < 0 {
        return Some(vec![f.to_vec()]);
    }
    let root = disc.sqrt().ok()?;
    let half = S::from_i64(2).inv().ok()?;
    let r1 = b.add_ref(&root).mul_ref(&half);
    let r2 = b.sub_ref(&root).mul_ref(&half);
    let candidate = upoly::mul(&[r1.clone(), S::one()], &[r2.clone(), S::one()]);
    (candidate == f).then(|| vec![vec![r1, S::one()], vec![r2, S::one()]])
}

/// Product of the conjugates of `f` under all sign flips of its primes.
fn rational_norm<S: Scalar>(f: &[S]) -> Option<Dense<S>> {
    let mut primes: Vec<u64> = f.iter().flat_map(Scalar::primes).collect();
    primes.sort_unstable();
    primes.dedup();
    let degree = upoly::degree(f)? << primes.len();
    if degree > MAX_NORM_DEGREE {
        return None;
    }
    let mut norm = vec![S::one()];
    for mask in 0u32..(1 << primes.len()) {
        let flip: Vec<u64> = primes
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, p)| *p)
            .collect();
        let conj: Vec<S> = f.iter().map(|c| c.flip_primes(&flip)).collect();
        norm = upoly::mul(&norm, &conj);
    }
    Some(norm)
}

/// Factors of `f` over the field of its coefficients, each of degree at
/// most 4 unless the search gives up.
fn field_factors<S: Scalar>(f: &[S]) -> Option<Vec<Dense<S>>> {
    let norm = rational_norm(f)?;
    let (sf, _) = upoly::div_rem(&norm, &upoly::gcd(&norm, &upoly::derivative(&norm)));
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    for h in rational_factors(&sf) {
        loop {
            let g = upoly::gcd(&rest, &h);
            if upoly::degree(&g).is_none_or(|d| d == 0) {
                break;
            }
            let (q, _) = upoly::div_rem(&rest, &g);
            rest = q;
            out.push(g);
        }
    }
    if upoly::degree(&rest).is_some_and(|d| d > 0) {
        out.push(rest);
    }
    Some(out)
}

/// A real root or a conjugate pair of roots.
#[derive(Clone, Copy)]
enum Atom {
    Real(f64),
    Pair(C64),
}

impl Atom {
    fn degree(self) -> usize {
        match self {
            Atom::Real(_) => 1,
            Atom::Pair(_) => 2,
        }
    }

    fn poly(self) -> Vec<f64> {
        match self {
            Atom::Real(r) => vec![-r, 1.0],
            Atom::Pair(z) => vec![z.norm_sqr(), -2.0 * z.re, 1.0],
        }
    }
}

fn float_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((set, next)) = stack.pop() {
        if !set.is_empty() {
            out.push(set.clone());
        }
        if set.len() == max {
            continue;
        }
        for k in next..n {
            let mut s = set.clone();
            s.push(k);
            stack.push((s, k + 1));
        }
    }
    out
}

/// Splits a square-free polynomial with rational coefficients into factors
/// found as recognized products of small root groups; the last entry is
/// whatever could not be split further.
fn rational_factors<S: Scalar>(f: &[S]) -> Vec<Dense<S>> {
    let floats: Vec<f64> = f.iter().map(Scalar::to_f64).collect();
    let (real, pairs) = classify(&complex_roots(&floats), REAL_ROOT_TOL);
    let mut atoms: Vec<Atom> = real.into_iter().map(Atom::Real).chain(pairs.into_iter().map(Atom::Pair)).collect();
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    'search: for size in 1..=4usize {
        loop {
            if upoly::degree(&rest).is_none_or(|d| d <= size) {
                break 'search;
            }
            let mut groups: Vec<Vec<usize>> = subsets(atoms.len(), size)
                .into_iter()
                .filter(|g| g.iter().map(|k| atoms[*k].degree()).sum::<usize>() == size)
                .collect();
            groups.sort();
            let found = groups.into_iter().find_map(|g| {
                let product = g.iter().fold(vec![1.0], |acc, k| float_mul(&acc, &atoms[*k].poly()));
                let candidate: Vec<S> = product.iter().map(|x| S::recognize(*x)).collect::<Option<_>>()?;
                let (q, r) = upoly::div_rem(&rest, &candidate);
                r.is_empty().then_some((g, candidate, q))
            });
            match found {
                Some((group, candidate, quotient)) => {
                    out.push(candidate);
                    rest = quotient;
                    let mut keep = Vec::new();
                    for (k, a) in atoms.iter().enumerate() {
                        if !group.contains(&k) {
                            keep.push(*a);
                        }
                    }
                    atoms = keep;
                }
                None => break,
            }
        }
    }
    if upoly::degree(&rest).is_some_and(|d| d > 0) {
        out.push(rest);
    }
    out
}

/// Writes a monic quartic as a product of two monic quadratics by recognizing
/// `y = q + s` for `(u^2 + p u + q)(u^2 + r u + s)` from numeric roots.
fn ferrari<S: Scalar>(f: &[S]) -> Option<(Dense<S>, Dense<S>)> {
    let floats: Vec<f64> = f.iter().map(Scalar::to_f64).collect();
    let roots = complex_roots(&floats);
    if roots.len() != 4 {
        return None;
    }
    let (d, b, a) = (&f[0], &f[2], &f[3]);
    let half = S::from_i64(2).inv().ok()?;
    let four = S::from_i64(4);
    for (x, y) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
        let sum = roots[x.0] * roots[x.1] + roots[y.0] * roots[y.1];
        if sum.im.abs() > 1e-6 * (1.0 + sum.norm()) {
            continue;
        }
        let Some(yv) = S::recognize(sum.re) else { continue };
        // p + r = a, pr = b - y; q + s = y, qs = d
        let disc_p = a.mul_ref(a).sub_ref(&four.mul_ref(&b.sub_ref(&yv)));
        let disc_q = yv.mul_ref(&yv).sub_ref(&four.mul_ref(d));
        let (Ok(sp), Ok(sq)) = (disc_p.sqrt(), disc_q.sqrt()) else { continue };
        for sign in [1i64, -1] {
            let sp = sp.mul_ref(&S::from_i64(sign));
            let p = a.add_ref(&sp).mul_ref(&half);
            let r = a.sub_ref(&sp).mul_ref(&half);
            let q = yv.add_ref(&sq).mul_ref(&half);
            let s = yv.sub_ref(&sq).mul_ref(&half);
            let first = vec![q, p, S::one()];
            let second = vec![s, r, S::one()];
            if upoly::mul(&first, &second) == f {
                return Some((first, second));
            }
        }
    }
    None
}
