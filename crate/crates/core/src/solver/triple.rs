use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::quatpoly::{QPoly, RPoly};
use crate::scalar::Scalar;

/// `(P, Q, R)` with `Q * conj(Q) = P * R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Triple<S: Scalar> {
    pub p: RPoly<S>,
    pub q: QPoly<S>,
    pub r: RPoly<S>,
}

impl<S: Scalar> Triple<S> {
    /// Checked constructor.
    pub fn new(p: RPoly<S>, q: QPoly<S>, r: RPoly<S>) -> Result<Self, SolverError> {
        let t = Self { p, q, r };
        if !t.is_valid() {
            return Err(SolverError::InvariantViolated(format!(
                "Q conj(Q) - P R = {}",
                t.residual()
            )));
        }
        Ok(t)
    }

    /// Constructor for values already known to satisfy the invariant.
    pub fn new_unchecked(p: RPoly<S>, q: QPoly<S>, r: RPoly<S>) -> Self {
        Self { p, q, r }
    }

    /// `Q conj(Q) - P R`.
    pub fn residual(&self) -> RPoly<S> {
        &self.q.norm() - &(&self.p * &self.r)
    }

    pub fn is_valid(&self) -> bool {
        self.residual().is_zero()
    }

    /// `(P - T conj(Q) - Q conj(T) + T R conj(T), Q - T R, R)`.
    pub fn transform(&self, t: &QPoly<S>) -> Self {
        let r = self.r.to_quat();
        let tr = t * &r;
        let q = &self.q - &tr;
        let t_bar = t.conj();
        let p = &(&(&self.p.to_quat() - &(t * &self.q.conj())) - &(&self.q * &t_bar)) + &(&tr * &t_bar);
        let p = p.as_real().expect("transform keeps P real");
        Self { p, q, r: self.r.clone() }
    }

    /// `(R, Q, P)`.
    pub fn swap_pr(&self) -> Self {
        Self {
            p: self.r.clone(),
            q: self.q.clone(),
            r: self.p.clone(),
        }
    }

    /// `(R, conj(Q), P)`; solutions of it give solutions of `self` with the
    /// roles of the two factors exchanged and conjugated.
    pub fn conjugate_swap(&self) -> Self {
        Self {
            p: self.r.clone(),
            q: self.q.conj(),
            r: self.p.clone(),
        }
    }

    pub fn swap_vars(&self) -> Self {
        Self {
            p: self.p.swap_vars(),
            q: self.q.swap_vars(),
            r: self.r.swap_vars(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    /// The triple `(|AC|^2 D, ABCD, |B|^2 D)`.
    pub fn from_factors(a: &QPoly<S>, b: &QPoly<S>, c: &QPoly<S>, d: &RPoly<S>) -> Self {
        let ac = a * c;
        Self {
            p: &ac.norm() * d,
            q: (&(&(a * b) * c)).mul_real(d),
            r: &b.norm() * d,
        }
    }
}

/// Six real polynomials with `X1^2 + X2^2 + X3^2 + X4^2 + X5^2 = X6^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct PythTuple<S: Scalar> {
    pub x: [RPoly<S>; 6],
}

impl<S: Scalar> PythTuple<S> {
    pub fn new(x: [RPoly<S>; 6]) -> Result<Self, SolverError> {
        let t = Self { x };
        if !t.residual().is_zero() {
            return Err(SolverError::InvariantViolated(format!(
                "X1^2 + ... + X5^2 - X6^2 = {}",
                t.residual()
            )));
        }
        Ok(t)
    }

    pub fn new_unchecked(x: [RPoly<S>; 6]) -> Self {
        Self { x }
    }

    /// `X1^2 + ... + X5^2 - X6^2`.
    pub fn residual(&self) -> RPoly<S> {
        let mut sum = RPoly::zero();
        for xi in &self.x[..5] {
            sum = &sum + &(xi * xi);
        }
        &sum - &(&self.x[5] * &self.x[5])
    }

    pub fn is_valid(&self) -> bool {
        self.residual().is_zero()
    }

    /// Whether every entry has degree at most `m` in `u` and `n` in `v`.
    pub fn in_space(&self, m: u32, n: u32) -> bool {
        self.x.iter().all(|x| x.in_space(m, n))
    }

    /// `Q = X1 + i X2 + j X3 + k X4`, `P = X6 - X5`, `R = X6 + X5`.
    pub fn to_triple(&self) -> Result<Triple<S>, SolverError> {
        let [x1, x2, x3, x4, x5, x6] = &self.x;
        Triple::new(x6 - x5, QPoly::from_components([x1, x2, x3, x4]), x6 + x5)
    }

    /// Inverse of [`PythTuple::to_triple`].
    pub fn from_triple(t: &Triple<S>) -> Result<Self, SolverError> {
        if !t.is_valid() {
            return Err(SolverError::InvariantViolated(format!("Q conj(Q) - P R = {}", t.residual())));
        }
        let half = S::from_i64(2).inv().expect("2 is invertible");
        let [x1, x2, x3, x4] = t.q.components();
        let x5 = (&t.r - &t.p).scale_base(&half);
        let x6 = (&t.r + &t.p).scale_base(&half);
        Self::new([x1, x2, x3, x4, x5, x6])
    }

    /// `X1 + i X2 + j X3 + k X4 = 2ABCD`, `X5 = (|B|^2 - |AC|^2) D`,
    /// `X6 = (|B|^2 + |AC|^2) D`.
    pub fn from_abcd(a: &QPoly<S>, b: &QPoly<S>, c: &QPoly<S>, d: &RPoly<S>) -> Result<Self, SolverError> {
        let ac = a * c;
        let nb = b.norm();
        let nac = ac.norm();
        let q = (&(&(a * b) * c)).mul_real(d).scale_base(&S::from_i64(2));
        let [x1, x2, x3, x4] = q.components();
        let x5 = &(&nb - &nac) * d;
        let x6 = &(&nb + &nac) * d;
        Self::new([x1, x2, x3, x4, x5, x6])
    }

    /// [`PythTuple::from_abcd`] restricted to inputs with `|B|^2 D` and
    /// `|AC|^2 D` of degree at most 2 in each variable.
    pub fn from_abcd_22(a: &QPoly<S>, b: &QPoly<S>, c: &QPoly<S>, d: &RPoly<S>) -> Result<Self, SolverError> {
        let nb = &b.norm() * d;
        let nac = &(a * c).norm() * d;
        if !nb.in_space(2, 2) || !nac.in_space(2, 2) {
            return Err(SolverError::ConstraintViolated(
                "|B|^2 D and |AC|^2 D must have degree at most 2 in each variable".into(),
            ));
        }
        Self::from_abcd(a, b, c, d)
    }
}
