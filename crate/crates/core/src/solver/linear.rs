use serde::{Deserialize, Serialize};

use super::bilinear::split_small_r;
use super::univariate::solve_univariate;
use super::{Certificate, DivideScheme, SolverError, Step, Triple};
use crate::quatpoly::{QPoly, RPoly, Var};
use crate::realpoly::{factor_real_univariate, gcd, gcd_with_components, FactorOutcome};
use crate::scalar::Scalar;

/// Which of `(P, Q, R)` and `(R, Q, P)` equals `(|AC|^2 D, ABCD, |B|^2 D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Direct,
    Swapped,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Direct => Orientation::Swapped,
            Orientation::Swapped => Orientation::Direct,
        }
    }
}

/// Factors of a triple whose `Q` has degree at most 1 in `v`; `A` and `C`
/// involve only `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFactors<S: Scalar> {
    pub a: QPoly<S>,
    pub b: QPoly<S>,
    pub c: QPoly<S>,
    pub d: RPoly<S>,
    pub orientation: Orientation,
}

impl<S: Scalar> LinearFactors<S> {
    fn new(a: QPoly<S>, b: QPoly<S>, c: QPoly<S>, d: RPoly<S>, orientation: Orientation) -> Self {
        Self { a, b, c, d, orientation }
    }

    /// The triple these factors describe, in the input's slot order.
    pub fn to_triple(&self) -> Triple<S> {
        let t = Triple::from_factors(&self.a, &self.b, &self.c, &self.d);
        match self.orientation {
            Orientation::Direct => t,
            Orientation::Swapped => t.swap_pr(),
        }
    }
}

fn is_nonconstant<S: Scalar>(p: &RPoly<S>) -> bool {
    !p.is_constant()
}

/// A monic irreducible real factor of `r` (in `u` only) and the cofactor.
fn split_irreducible<S: Scalar>(r: &RPoly<S>) -> Result<(RPoly<S>, RPoly<S>), SolverError> {
    match factor_real_univariate(r)? {
        FactorOutcome::Factored(f) => {
            let first = f.factors.first().expect("degree > 2 has factors").0.clone();
            let rest = r.div_exact(&first)?;
            Ok((first, rest))
        }
        FactorOutcome::Degraded(_) => Err(SolverError::ExactFactorizationUnavailable(format!("{r}"))),
    }
}

/// Factors `(P, Q, R)` with `R` in `u` only, `deg_v Q <= 1` and no common
/// real divisor of `Q` and `R`: the result satisfies
/// `(R, Q, P) = (|AC|^2 D, ABCD, |B|^2 D)`.
fn factor_r_in_u<S: Scalar>(t: &Triple<S>) -> Result<LinearFactors<S>, SolverError> {
    let swapped = Orientation::Swapped;
    if t.r.degu().unwrap_or(0) <= 2 {
        let s = split_small_r(t)?;
        return Ok(if s.flipped {
            LinearFactors::new(s.a, s.b, QPoly::one(), s.d, swapped)
        } else {
            LinearFactors::new(QPoly::one(), s.a, s.b, s.d, swapped)
        });
    }
    let (r1, r2) = split_irreducible(&t.r)?;
    let s = split_small_r(&Triple::new_unchecked(&t.p * &r2, t.q.clone(), r1))?;
    // the factor whose norm is r1, the other factor, and their order in Q
    let (rf, of, rf_first) = if s.flipped { (s.a, s.b, true) } else { (s.b, s.a, false) };
    let d1 = s
        .d
        .constant_value()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| SolverError::HypothesisViolated("Q and R share a real factor".into()))?;
    let p = t.p.scale_base(&d1.inv()?);
    let inner = factor_r_in_u(&Triple::new_unchecked(p, of, r2))?;
    let d = inner.d.scale_base(&d1);
    Ok(if rf_first {
        LinearFactors::new(&rf * &inner.a, inner.b, inner.c, d, swapped)
    } else {
        LinearFactors::new(inner.a, inner.b, &inner.c * &rf, d, swapped)
    })
}

fn univariate_factors<S: Scalar>(t: &Triple<S>, want: Orientation) -> Result<LinearFactors<S>, SolverError> {
    let sol = solve_univariate(t, Var::U)?;
    Ok(match want {
        Orientation::Direct => LinearFactors::new(sol.a, sol.b, QPoly::one(), sol.d, want),
        Orientation::Swapped => LinearFactors::new(QPoly::one(), sol.a, sol.b, sol.d, want),
    })
}

fn zero_q<S: Scalar>(t: &Triple<S>) -> LinearFactors<S> {
    if t.r.is_zero() {
        LinearFactors::new(QPoly::one(), QPoly::zero(), QPoly::one(), t.p.clone(), Orientation::Direct)
    } else {
        LinearFactors::new(QPoly::one(), QPoly::zero(), QPoly::one(), t.r.clone(), Orientation::Swapped)
    }
}

fn check_linear<S: Scalar>(t: &Triple<S>) -> Result<(), SolverError> {
    if t.q.degv().unwrap_or(0) > 1 {
        return Err(SolverError::DegreeOutOfRange(format!("Q has degree {} in v", t.q.degv().unwrap_or(0))));
    }
    if !t.is_valid() {
        return Err(SolverError::InvariantViolated(format!("Q conj(Q) - P R = {}", t.residual())));
    }
    Ok(())
}

/// Factors a triple with `deg_v Q <= 1`, absorbing common real divisors
/// into the factors so that the result describes `t` itself. `want` picks
/// the orientation when both are available.
pub fn factor_linear_v<S: Scalar>(t: &Triple<S>, want: Orientation) -> Result<LinearFactors<S>, SolverError> {
    check_linear(t)?;
    factor_linear_rec(t, want)
}

fn factor_linear_rec<S: Scalar>(t: &Triple<S>, want: Orientation) -> Result<LinearFactors<S>, SolverError> {
    if t.q.is_zero() {
        return Ok(zero_q(t));
    }
    if t.q.is_free_of(Var::V) {
        return univariate_factors(t, want);
    }
    let g = gcd_with_components(&t.q, &t.r);
    if is_nonconstant(&g) {
        let h = gcd(&g, &t.p);
        if is_nonconstant(&h) {
            let reduced = Triple::new_unchecked(t.p.div_exact(&h)?, t.q.div_real_exact(&h)?, t.r.div_exact(&h)?);
            let mut inner = factor_linear_rec(&reduced, want)?;
            inner.d = &inner.d * &h;
            return Ok(inner);
        }
        let reduced = Triple::new_unchecked(t.p.clone(), t.q.div_real_exact(&g)?, t.r.div_exact(&(&g * &g))?);
        let in_u = g.is_free_of(Var::V);
        let mut inner = factor_linear_rec(&reduced, if in_u { want } else { Orientation::Direct })?;
        let gq = g.to_quat();
        match inner.orientation {
            Orientation::Direct => inner.b = &inner.b * &gq,
            Orientation::Swapped if in_u => inner.a = &inner.a * &gq,
            Orientation::Swapped => {
                return Err(SolverError::HypothesisViolated(format!("cannot absorb {g} into a u-factor")))
            }
        }
        return Ok(inner);
    }
    if is_nonconstant(&gcd_with_components(&t.q, &t.p)) {
        let mut inner = factor_linear_rec(&t.swap_pr(), want.flip())?;
        inner.orientation = inner.orientation.flip();
        return Ok(inner);
    }
    if t.r.is_free_of(Var::V) {
        factor_r_in_u(t)
    } else if t.p.is_free_of(Var::V) {
        let mut f = factor_r_in_u(&t.swap_pr())?;
        f.orientation = Orientation::Direct;
        Ok(f)
    } else {
        Err(SolverError::HypothesisViolated("neither P nor R is free of v".into()))
    }
}

/// Certificate for a triple with `deg_v Q <= 1`. Common real divisors are
/// recorded as `DivideCommon` steps, a final `SwapPr` marks the swapped
/// orientation, and `A`, `C` involve only `u`.
pub fn solve_linear_in_v<S: Scalar>(t: &Triple<S>) -> Result<Certificate<S>, SolverError> {
    check_linear(t)?;
    let mut steps = Vec::new();
    let mut cur = t.clone();
    while !cur.q.is_zero() {
        let g = gcd_with_components(&cur.q, &cur.r);
        let step = if is_nonconstant(&g) {
            let h = gcd(&g, &cur.p);
            if is_nonconstant(&h) {
                Step::DivideCommon { d: h, scheme: DivideScheme::All }
            } else {
                Step::DivideCommon { d: g, scheme: DivideScheme::QR2 }
            }
        } else {
            let g = gcd_with_components(&cur.q, &cur.p);
            if !is_nonconstant(&g) {
                break;
            }
            Step::DivideCommon { d: g, scheme: DivideScheme::PQ2 }
        };
        cur = step.apply(&cur)?;
        steps.push(step);
    }
    let f = if cur.q.is_zero() {
        zero_q(&cur)
    } else if cur.q.is_free_of(Var::V) {
        univariate_factors(&cur, Orientation::Direct)?
    } else if cur.r.is_free_of(Var::V) {
        factor_r_in_u(&cur)?
    } else if cur.p.is_free_of(Var::V) {
        let mut f = factor_r_in_u(&cur.swap_pr())?;
        f.orientation = Orientation::Direct;
        f
    } else {
        return Err(SolverError::HypothesisViolated("neither P nor R is free of v".into()));
    };
    if f.orientation == Orientation::Swapped {
        steps.push(Step::SwapPr);
    }
    let cert = Certificate::new(f.a, f.b, f.c, f.d, steps);
    cert.verify(t)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quatpoly::Quaternion;
    use crate::scalar::FieldElement;

    type Q = QPoly<FieldElement>;
    type R = RPoly<FieldElement>;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Q {
        Q::quat(Quaternion::from_ints(w, x, y, z))
    }

    fn triple(a: &Q, b: &Q, c: &Q, d: &R) -> Triple<FieldElement> {
        Triple::from_factors(a, b, c, d)
    }

    fn roundtrip(t: &Triple<FieldElement>) {
        let f = factor_linear_v(t, Orientation::Direct).unwrap();
        assert_eq!(&f.to_triple(), t);
        assert!(f.a.is_free_of(Var::V) && f.c.is_free_of(Var::V));
        let cert = solve_linear_in_v(t).unwrap();
        cert.verify(t).unwrap();
        let t2 = t.swap_pr();
        assert_eq!(factor_linear_v(&t2, Orientation::Direct).unwrap().to_triple(), t2);
        solve_linear_in_v(&t2).unwrap();
    }

    #[test]
    fn example_triple() {
        let (u, v) = (Q::u(), Q::v());
        roundtrip(&triple(&(&u + &q(0, 1, 0, 0)), &(&v + &q(0, 0, 1, 0)), &(&u + &q(0, 0, 0, 1)), &R::one()));
    }

    #[test]
    fn high_degree_r() {
        let (u, v) = (Q::u(), Q::v());
        let a = &(&u + &q(0, 1, 0, 0)) * &(&u + &q(1, 0, 1, 0));
        let b = &(&u * &v) + &q(1, 0, 0, 1);
        let c = &(&(&u + &q(0, 0, 0, 1)) * &(&u + &q(2, 1, 0, 0))) * &(&u + &q(-1, 0, 0, 0));
        roundtrip(&triple(&a, &b, &c, &R::one()));
    }

    #[test]
    fn common_divisors() {
        let (u, v) = (Q::u(), Q::v());
        let a = &u + &q(0, 1, 0, 0);
        let b = &v + &q(0, 0, 1, 0);
        let c = &u + &q(1, 0, 0, 1);
        let d = &(&R::u() * &R::u()) + &R::one();
        roundtrip(&triple(&a, &b, &c, &d));
        let t = triple(&a, &b, &c, &d);
        let cert = solve_linear_in_v(&t).unwrap();
        assert!(cert.transforms.iter().any(|s| matches!(s, Step::DivideCommon { .. })));
        // a real factor inside B
        let g = &R::u() * &R::u() + R::constant(FieldElement::from_integer(2));
        roundtrip(&triple(&a, &b.mul_real(&g), &c, &R::one()));
    }

    #[test]
    fn rejects_high_v_degree() {
        let v = Q::v();
        let b = &(&v * &v) + &q(0, 1, 0, 0);
        let t = triple(&Q::one(), &b, &Q::one(), &R::one());
        assert!(matches!(solve_linear_in_v(&t), Err(SolverError::DegreeOutOfRange(_))));
    }
}
