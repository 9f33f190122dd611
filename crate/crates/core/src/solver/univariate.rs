use super::{SolverError, Triple};
use crate::quatpoly::{QPoly, RPoly, Var};
use crate::scalar::Scalar;

/// `(P, Q, R) = (A conj(A) D, A B D, B conj(B) D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateSolution<S: Scalar> {
    pub a: QPoly<S>,
    pub b: QPoly<S>,
    pub d: RPoly<S>,
    /// How many times the recursion passed to `(R, conj(Q), P)`.
    pub relabels: usize,
}

impl<S: Scalar> UnivariateSolution<S> {
    pub fn to_triple(&self) -> Triple<S> {
        Triple::new_unchecked(
            &self.a.norm() * &self.d,
            (&self.a * &self.b).mul_real(&self.d),
            &self.b.norm() * &self.d,
        )
    }
}

/// Solves `Q conj(Q) = P R` with every entry in `K[var]`.
///
/// Divides `Q` by whichever of `R`, `P` has degree at most `deg Q`
/// (preferring `R`), recurses on the remainder and lifts the quotient back
/// into `A`.
pub fn solve_univariate<S: Scalar>(t: &Triple<S>, var: Var) -> Result<UnivariateSolution<S>, SolverError> {
    let other = var.other();
    if !(t.p.is_free_of(other) && t.q.is_free_of(other) && t.r.is_free_of(other)) {
        return Err(SolverError::DegreeOutOfRange(format!("triple is not univariate in {var}")));
    }
    if !t.is_valid() {
        return Err(SolverError::InvariantViolated(format!("Q conj(Q) - P R = {}", t.residual())));
    }
    solve_rec(t, var)
}

fn solve_rec<S: Scalar>(t: &Triple<S>, var: Var) -> Result<UnivariateSolution<S>, SolverError> {
    if t.q.is_zero() {
        return Ok(if t.r.is_zero() {
            UnivariateSolution {
                a: QPoly::one(),
                b: QPoly::zero(),
                d: t.p.clone(),
                relabels: 0,
            }
        } else {
            UnivariateSolution {
                a: QPoly::zero(),
                b: QPoly::one(),
                d: t.r.clone(),
                relabels: 0,
            }
        });
    }
    let n = t.q.deg(var).unwrap_or(0);
    if !t.r.is_zero() && t.r.deg(var).unwrap_or(0) <= n {
        let (quot, rem) = t.q.div_rem_real(&t.r, var)?;
        let mut reduced = t.transform(&quot);
        // exact arithmetic already gives this; tolerance backends need it
        reduced.q = rem;
        let inner = solve_rec(&reduced, var)?;
        let a = &inner.a + &(&quot * &inner.b.conj());
        return Ok(UnivariateSolution { a, ..inner });
    }
    if t.p.is_zero() || t.p.deg(var).unwrap_or(0) > n {
        return Err(SolverError::HypothesisViolated(
            "neither P nor R has degree at most deg Q".into(),
        ));
    }
    let inner = solve_rec(&t.conjugate_swap(), var)?;
    Ok(UnivariateSolution {
        a: inner.b.conj(),
        b: inner.a.conj(),
        d: inner.d,
        relabels: inner.relabels + 1,
    })
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

    fn check(a: &Q, b: &Q, d: &R) {
        let t = Triple::new(&a.norm() * d, (a * b).mul_real(d), &b.norm() * d).unwrap();
        let sol = solve_univariate(&t, Var::U).unwrap();
        assert_eq!(sol.to_triple(), t);
    }

    #[test]
    fn products_are_recovered() {
        let u = Q::u();
        check(&(&u + &q(0, 1, 0, 0)), &(&u + &q(0, 0, 1, 0)), &R::one());
        check(&(&(&u * &u) + &q(1, 0, 0, 1)), &(&u + &q(2, 1, 0, 0)), &R::one());
        check(&q(3, 0, 0, 0), &(&u * &u + q(0, 1, 1, 0)), &R::u());
        check(&(&u * &u + q(0, 1, 1, 0)), &q(1, 0, 0, 0), &(&R::u() * &R::u() + R::one()));
    }

    #[test]
    fn zero_q() {
        let sol = solve_univariate(&Triple::new(R::u(), Q::zero(), R::zero()).unwrap(), Var::U).unwrap();
        assert_eq!((sol.a, sol.b, sol.d), (Q::one(), Q::zero(), R::u()));
        let sol = solve_univariate(&Triple::new(R::zero(), Q::zero(), R::u()).unwrap(), Var::U).unwrap();
        assert_eq!((sol.a, sol.b, sol.d), (Q::zero(), Q::one(), R::u()));
    }

    #[test]
    fn conjugate_route_is_taken() {
        // deg R > deg Q forces division by P
        let u = Q::u();
        let a = q(1, 2, 0, 0);
        let b = &(&u * &u) + &q(0, 0, 1, 0);
        let t = Triple::new(a.norm(), &a * &b, b.norm()).unwrap();
        let sol = solve_univariate(&t, Var::U).unwrap();
        assert!(sol.relabels > 0);
        assert_eq!(sol.to_triple(), t);
    }

    #[test]
    fn rejects_bivariate() {
        let t = Triple::new(R::one(), Q::v(), &R::v() * &R::v()).unwrap();
        assert!(matches!(solve_univariate(&t, Var::U), Err(SolverError::DegreeOutOfRange(_))));
    }
}
