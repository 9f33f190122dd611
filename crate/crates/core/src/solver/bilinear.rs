use serde::{Deserialize, Serialize};

use super::{SolverError, Triple};
use crate::quatpoly::{QPoly, Quaternion, RPoly, Var};
use crate::scalar::Scalar;

/// Which side the `u`-factor sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitOrder {
    /// `Q' = A' B`.
    Left,
    /// `Q' = B A'`.
    Right,
}

/// `Q' = A' B` or `B A'` with `A'` in `v` only, `B` in `u` only,
/// `R = |B|^2 D` and `|A'|^2 = P' D` for a nonzero constant `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearSplit<S: Scalar> {
    pub a_prime: QPoly<S>,
    pub b: QPoly<S>,
    pub order: SplitOrder,
    pub d: S,
}

impl<S: Scalar> BilinearSplit<S> {
    pub fn product(&self) -> QPoly<S> {
        match self.order {
            SplitOrder::Left => &self.a_prime * &self.b,
            SplitOrder::Right => &self.b * &self.a_prime,
        }
    }
}

/// Bilinear coefficients `q = q11 uv + q10 u + q01 v + q00`.
fn coefficients<S: Scalar>(q: &QPoly<S>) -> [Quaternion<S>; 4] {
    [q.coeff(1, 1), q.coeff(1, 0), q.coeff(0, 1), q.coeff(0, 0)]
}

fn linear<S: Scalar>(var: Var, c1: Quaternion<S>, c0: Quaternion<S>) -> QPoly<S> {
    QPoly::from_univariate(var, [c0, c1])
}

/// Solves `x * beta = y` (right) or `beta * x = y` (left) from one of two
/// equations, picking the first with nonzero `x`.
fn solve_for<S: Scalar>(
    pairs: [(&Quaternion<S>, &Quaternion<S>); 2],
    right: bool,
) -> Option<Quaternion<S>> {
    let (x, y) = pairs.into_iter().find(|(x, _)| !x.is_zero())?;
    let inv = x.inv().ok()?;
    Some(if right { &inv * y } else { y * &inv })
}

/// Candidate factorizations of a bilinear `q` into a `u`-linear and a
/// `v`-linear factor, in search order: right factor in `u`, right factor in
/// `v`, left factor in `u`, left factor in `v`. Each candidate is verified.
pub fn bilinear_factorizations<S: Scalar>(q: &QPoly<S>) -> Vec<(QPoly<S>, QPoly<S>, SplitOrder)> {
    let [q11, q10, q01, q00] = coefficients(q);
    let one = Quaternion::one();
    let mut out = Vec::new();
    let mut push = |a_prime: QPoly<S>, b: QPoly<S>, order: SplitOrder| {
        let product = match order {
            SplitOrder::Left => &a_prime * &b,
            SplitOrder::Right => &b * &a_prime,
        };
        if &product == q {
            out.push((a_prime, b, order));
        }
    };
    // q = (q11 v + q10)(u + beta)
    if let Some(beta) = solve_for([(&q11, &q01), (&q10, &q00)], true) {
        push(linear(Var::V, q11.clone(), q10.clone()), linear(Var::U, one.clone(), beta), SplitOrder::Left);
    }
    // q = (q11 u + q01)(v + gamma)
    if let Some(gamma) = solve_for([(&q11, &q10), (&q01, &q00)], true) {
        push(linear(Var::V, one.clone(), gamma), linear(Var::U, q11.clone(), q01.clone()), SplitOrder::Right);
    }
    // q = (u + beta)(q11 v + q10)
    if let Some(beta) = solve_for([(&q11, &q01), (&q10, &q00)], false) {
        push(linear(Var::V, q11.clone(), q10.clone()), linear(Var::U, one.clone(), beta), SplitOrder::Right);
    }
    // q = (v + gamma)(q11 u + q01)
    if let Some(gamma) = solve_for([(&q11, &q10), (&q01, &q00)], false) {
        push(linear(Var::V, one.clone(), gamma), linear(Var::U, q11.clone(), q01.clone()), SplitOrder::Left);
    }
    out
}

/// Splits `Q'` of degree at most 1 in each variable, where
/// `Q' conj(Q') = P' R` with `P'` in `v` only and `R` in `u` only.
pub fn split_bilinear<S: Scalar>(q: &QPoly<S>, p: &RPoly<S>, r: &RPoly<S>) -> Result<BilinearSplit<S>, SolverError> {
    if !q.in_space(1, 1) {
        return Err(SolverError::DegreeOutOfRange(format!("Q' = {q} is not bilinear")));
    }
    if !p.is_free_of(Var::U) || !r.is_free_of(Var::V) {
        return Err(SolverError::DegreeOutOfRange("P' must involve only v and R only u".into()));
    }
    if q.is_zero() {
        return Err(SolverError::NoSplit("Q' is zero".into()));
    }
    let candidates = if q.is_free_of(Var::U) {
        vec![(q.clone(), QPoly::one(), SplitOrder::Left)]
    } else if q.is_free_of(Var::V) {
        vec![(QPoly::one(), q.clone(), SplitOrder::Left)]
    } else {
        bilinear_factorizations(q)
    };
    for (a_prime, b, order) in candidates {
        let Ok(d) = r.div_exact(&b.norm()) else { continue };
        let Some(d) = d.constant_value().filter(|d| !d.is_zero()) else { continue };
        if a_prime.norm() == p.scale_base(&d) {
            return Ok(BilinearSplit { a_prime, b, order, d });
        }
    }
    Err(SolverError::NoSplit(format!("{q} has no admissible split")))
}

/// `(P, Q, R)` or, when `flipped`, `(R, Q, P)` equals
/// `(A conj(A) D, A B D, B conj(B) D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmallRSplit<S: Scalar> {
    pub a: QPoly<S>,
    pub b: QPoly<S>,
    pub d: RPoly<S>,
    pub flipped: bool,
}

/// Factors `(P, Q, R)` with `R` in `u` only of degree at most 2 and `Q`
/// of degree at most 1 in `v`.
pub fn split_small_r<S: Scalar>(t: &Triple<S>) -> Result<SmallRSplit<S>, SolverError> {
    if t.r.is_zero() || !t.r.is_free_of(Var::V) || t.r.degu().unwrap_or(0) > 2 {
        return Err(SolverError::DegreeOutOfRange("R must be nonzero in u only of degree <= 2".into()));
    }
    if t.q.degv().unwrap_or(0) > 1 {
        return Err(SolverError::DegreeOutOfRange("Q must have degree <= 1 in v".into()));
    }
    let (shift, rem) = t.q.div_rem_real(&t.r, Var::U)?;
    let mut reduced = t.transform(&shift);
    reduced.q = rem;
    if reduced.q.is_zero() {
        return Ok(SmallRSplit {
            a: shift,
            b: QPoly::one(),
            d: t.r.clone(),
            flipped: false,
        });
    }
    let split = split_bilinear(&reduced.q, &reduced.p, &reduced.r)?;
    let d_inv = split.d.inv()?;
    let b_bar = split.b.conj();
    let d = RPoly::constant(split.d.clone());
    Ok(match split.order {
        SplitOrder::Left => SmallRSplit {
            a: &split.a_prime.scale_base(&d_inv) + &(&shift * &b_bar),
            b: split.b,
            d,
            flipped: false,
        },
        SplitOrder::Right => SmallRSplit {
            a: split.b.clone(),
            b: &split.a_prime.scale_base(&d_inv) + &(&b_bar * &shift),
            d,
            flipped: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldElement;

    type Q = QPoly<FieldElement>;
    type R = RPoly<FieldElement>;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Q {
        Q::quat(Quaternion::from_ints(w, x, y, z))
    }

    #[test]
    fn left_and_right_orders() {
        let (u, v) = (Q::u(), Q::v());
        let a = &v + &q(0, 0, 0, 1);
        let b = &u + &q(0, 1, 0, 0);
        let s = split_bilinear(&(&a * &b), &a.norm(), &b.norm()).unwrap();
        assert_eq!((s.a_prime, s.b, s.order), (a.clone(), b.clone(), SplitOrder::Left));

        let b = &u + &q(0, 1, 0, 0);
        let a = &v + &q(0, 0, 1, 0);
        let s = split_bilinear(&(&b * &a), &a.norm(), &b.norm()).unwrap();
        assert_eq!((s.a_prime, s.b, s.order), (a, b, SplitOrder::Right));
    }

    #[test]
    fn constant_d_is_recovered() {
        let a = &Q::v() + &q(1, 0, 1, 0);
        let b = (&Q::u() + &q(0, 1, 0, 0)).scale_base(&FieldElement::from_integer(2));
        let d = FieldElement::from_integer(3);
        let p = a.norm().scale_base(&d.inv().unwrap());
        let r = b.norm().scale_base(&d);
        let s = split_bilinear(&(&a * &b), &p, &r).unwrap();
        assert_eq!(s.product(), &a * &b);
        assert_eq!(s.b.norm().scale_base(&s.d), r);
    }

    #[test]
    fn irreducible_has_no_split() {
        let quv = &(&Q::u() * &Q::v()) + &q(0, 1, 0, 0);
        assert!(bilinear_factorizations(&quv).is_empty());
        let n = quv.norm();
        assert!(split_bilinear(&quv, &n, &R::one()).is_err());
    }

    #[test]
    fn small_r_both_orders() {
        let (u, v) = (Q::u(), Q::v());
        let shift = &u + &q(0, 1, 1, 0);
        let b = &u + &q(1, 0, 1, 0);
        let a = &v + &q(0, 0, 0, 1);
        for (qq, r) in [(&(&a * &b) + &(&shift * &b.norm().to_quat()), b.norm()), (&b * &a, b.norm())] {
            let p = qq.norm().div_exact(&r).unwrap();
            let t = Triple::new(p, qq, r).unwrap();
            let s = split_small_r(&t).unwrap();
            let target = if s.flipped { t.swap_pr() } else { t.clone() };
            assert_eq!(target.p, &s.a.norm() * &s.d);
            assert_eq!(target.q, (&s.a * &s.b).mul_real(&s.d));
            assert_eq!(target.r, &s.b.norm() * &s.d);
        }
    }
}
