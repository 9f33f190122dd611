use super::linear::{factor_linear_v, solve_linear_in_v, Orientation};
use super::{Certificate, DivideScheme, PythTuple, SolverError, Step, Triple};
use crate::quatpoly::{QPoly, Var};
use crate::realpoly::gcd_all;
use crate::scalar::Scalar;

/// Factors a Pythagorean 6-tuple of degree at most 2 in each variable:
/// `(P, Q, R) = (X6 - X5, X1 + i X2 + j X3 + k X4, X6 + X5)` is taken by the
/// recorded steps to `(|AC|^2 D, ABCD, |B|^2 D)` with `A, B, C` of degree at
/// most 1 and `D` of degree at most 2 in each variable. Every shift is by a
/// constant quaternion.
pub fn solve_22<S: Scalar>(x: &PythTuple<S>) -> Result<Certificate<S>, SolverError> {
    if !x.in_space(2, 2) {
        return Err(SolverError::DegreeOutOfRange("tuple entries must have degree <= 2 in u and v".into()));
    }
    solve_triple_22(&x.to_triple()?)
}

/// [`solve_22`] on the triple directly.
pub fn solve_triple_22<S: Scalar>(t: &Triple<S>) -> Result<Certificate<S>, SolverError> {
    if !(t.p.in_space(2, 2) && t.q.in_space(2, 2) && t.r.in_space(2, 2)) {
        return Err(SolverError::DegreeOutOfRange("P, Q, R must have degree <= 2 in u and v".into()));
    }
    if !t.is_valid() {
        return Err(SolverError::InvariantViolated(format!("Q conj(Q) - P R = {}", t.residual())));
    }
    let cert = solve_inner(t)?;
    cert.verify(t)?;
    if !cert.degrees_ok() {
        return Err(SolverError::HypothesisViolated("factor degrees exceed the bounds".into()));
    }
    if !cert.shifts_constant() {
        return Err(SolverError::HypothesisViolated("a recorded shift is not constant".into()));
    }
    Ok(cert)
}

fn solve_inner<S: Scalar>(t: &Triple<S>) -> Result<Certificate<S>, SolverError> {
    let mut steps: Vec<Step<S>> = Vec::new();
    if t.q.is_zero() {
        let (d, steps) = if t.r.is_zero() { (t.p.clone(), vec![]) } else { (t.r.clone(), vec![Step::SwapPr]) };
        return Ok(Certificate::new(QPoly::one(), QPoly::zero(), QPoly::one(), d, steps));
    }
    let mut cur = t.clone();
    let parts = cur.q.components();
    let g = gcd_all(parts.iter().chain([&cur.p, &cur.r]));
    if !g.is_constant() {
        let step = Step::DivideCommon { d: g, scheme: DivideScheme::All };
        cur = step.apply(&cur)?;
        steps.push(step);
    }
    if let Some(cert) = linear_path(&cur, &steps)? {
        return Ok(cert);
    }

    // both degrees of Q are 2; kill the u^2 v^2 coefficient of Q
    let q2 = cur.q.coeff_in(Var::V, 2);
    if q2.degu() == Some(2) {
        let r22 = cur.r.coeff(2, 2);
        let r22_inv = r22
            .inv()
            .map_err(|_| SolverError::HypothesisViolated("R has no u^2 v^2 term".into()))?;
        let t0 = QPoly::quat(q2.coeff(2, 0).scale(&r22_inv));
        let step = Step::Shift { t: t0 };
        cur = step.apply(&cur)?;
        steps.push(step);
    }
    if cur.r.coeff_in(Var::V, 2).degu() == Some(2) {
        cur = cur.swap_pr();
        steps.push(Step::SwapPr);
    }
    if let Some(cert) = linear_path(&cur, &steps)? {
        return Ok(cert);
    }

    let q2 = cur.q.coeff_in(Var::V, 2);
    let r2 = cur.r.coeff_in(Var::V, 2);
    let shift = q2
        .div_real_exact(&r2)
        .map_err(|_| SolverError::HypothesisViolated("v^2 coefficient of R does not divide that of Q".into()))?;
    if !shift.is_free_of(Var::V) || shift.degu().unwrap_or(0) > 1 {
        return Err(SolverError::HypothesisViolated("quotient of v^2 coefficients is not linear in u".into()));
    }
    let mut inner = cur.transform(&shift);
    inner.q = &cur.q - &shift.mul_real(&cur.r);
    let f = factor_linear_v(&inner, Orientation::Direct)?;
    if f.orientation != Orientation::Direct {
        return Err(SolverError::HypothesisViolated("inner factorization is not of the form R = |B|^2 D".into()));
    }
    if !f.d.is_constant() {
        return Err(SolverError::HypothesisViolated("inner factorization has nonconstant D".into()));
    }
    let (mut a, b, mut c) = (f.a, f.b, f.c);
    let rest = if a.degu().unwrap_or(0) <= 1 {
        // shift = A S + rest, C = C' + conj(B) S
        let (s, rest) = shift.left_div_rem(&a, Var::U)?;
        c = &c + &(&b.conj() * &s);
        rest
    } else {
        // conj(shift) = conj(C') S + rest', A = A' + conj(S) conj(B)
        let (s, rest) = shift.conj().left_div_rem(&c.conj(), Var::U)?;
        a = &a + &(&s.conj() * &b.conj());
        rest.conj()
    };
    steps.push(Step::Shift { t: rest });
    Ok(Certificate::new(a, b, c, f.d, steps))
}

/// Uses the v-linear solver (after exchanging `u` and `v` when needed) once
/// `Q` has degree at most 1 in some variable.
fn linear_path<S: Scalar>(cur: &Triple<S>, steps: &[Step<S>]) -> Result<Option<Certificate<S>>, SolverError> {
    if cur.q.degv().unwrap_or(0) <= 1 {
        return Ok(Some(solve_linear_in_v(cur)?.after(steps)));
    }
    if cur.q.degu().unwrap_or(0) <= 1 {
        return Ok(Some(solve_linear_in_v(&cur.swap_vars())?.swap_vars().after(steps)));
    }
    Ok(None)
}
