use serde::{Deserialize, Serialize};

use super::{SolverError, Triple};
use crate::quatpoly::{QPoly, RPoly};
use crate::scalar::{Backend, Scalar};

/// How a common real divisor `d` is removed from `(P, Q, R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivideScheme {
    /// `(P/d, Q/d, R/d)`.
    All,
    /// `(P, Q/d, R/d^2)`.
    QR2,
    /// `(P/d^2, Q/d, R)`.
    PQ2,
}

/// One recorded step of a certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", bound = "")]
pub enum Step<S: Scalar> {
    /// `(P, Q, R) -> (P - T conj(Q) - Q conj(T) + T R conj(T), Q - T R, R)`.
    #[serde(rename = "shift_by_t")]
    Shift { t: QPoly<S> },
    /// `(P, Q, R) -> (R, Q, P)`.
    SwapPr,
    DivideCommon { d: RPoly<S>, scheme: DivideScheme },
    /// Marks that factor labels were exchanged; leaves the triple unchanged.
    Relabel,
}

impl<S: Scalar> Step<S> {
    /// Applies the step, failing when a division is not exact.
    pub fn apply(&self, t: &Triple<S>) -> Result<Triple<S>, SolverError> {
        Ok(match self {
            Step::Shift { t: shift } => t.transform(shift),
            Step::SwapPr => t.swap_pr(),
            Step::Relabel => t.clone(),
            Step::DivideCommon { d, scheme } => {
                let d2 = d * d;
                let div = |p: &RPoly<S>, by: &RPoly<S>| {
                    p.div_exact(by)
                        .map_err(|_| SolverError::ReplayMismatch(format!("{d} does not divide {p}")))
                };
                let q = t
                    .q
                    .div_real_exact(d)
                    .map_err(|_| SolverError::ReplayMismatch(format!("{d} does not divide Q")))?;
                match scheme {
                    DivideScheme::All => Triple::new_unchecked(div(&t.p, d)?, q, div(&t.r, d)?),
                    DivideScheme::QR2 => Triple::new_unchecked(t.p.clone(), q, div(&t.r, &d2)?),
                    DivideScheme::PQ2 => Triple::new_unchecked(div(&t.p, &d2)?, q, t.r.clone()),
                }
            }
        })
    }

    pub fn swap_vars(&self) -> Self {
        match self {
            Step::Shift { t } => Step::Shift { t: t.swap_vars() },
            Step::DivideCommon { d, scheme } => Step::DivideCommon {
                d: d.swap_vars(),
                scheme: *scheme,
            },
            other => other.clone(),
        }
    }
}

/// Factors `A, B, C, D` together with the steps that take the input triple
/// to `(|AC|^2 D, ABCD, |B|^2 D)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Certificate<S: Scalar> {
    pub a: QPoly<S>,
    pub b: QPoly<S>,
    pub c: QPoly<S>,
    pub d: RPoly<S>,
    pub backend: Backend,
    pub transforms: Vec<Step<S>>,
}

impl<S: Scalar> Certificate<S> {
    pub fn new(a: QPoly<S>, b: QPoly<S>, c: QPoly<S>, d: RPoly<S>, transforms: Vec<Step<S>>) -> Self {
        Self {
            a,
            b,
            c,
            d,
            backend: S::BACKEND,
            transforms,
        }
    }

    /// `(|AC|^2 D, ABCD, |B|^2 D)`.
    pub fn target(&self) -> Triple<S> {
        Triple::from_factors(&self.a, &self.b, &self.c, &self.d)
    }

    /// Applies every step to `input`.
    pub fn apply_steps(&self, input: &Triple<S>) -> Result<Triple<S>, SolverError> {
        self.transforms.iter().try_fold(input.clone(), |t, step| step.apply(&t))
    }

    /// Replays the steps on `input` and compares with the factor triple.
    pub fn verify(&self, input: &Triple<S>) -> Result<(), SolverError> {
        let reached = self.apply_steps(input)?;
        let target = self.target();
        let slots = [
            ("P", &reached.p - &target.p),
            ("R", &reached.r - &target.r),
        ];
        for (name, diff) in slots {
            if !diff.is_zero() {
                return Err(SolverError::ReplayMismatch(format!("{name} differs by {diff}")));
            }
        }
        let dq = &reached.q - &target.q;
        if !dq.is_zero() {
            return Err(SolverError::ReplayMismatch(format!("Q differs by {dq}")));
        }
        Ok(())
    }

    /// Whether `A, B, C` have degree at most 1 and `D` at most 2 in each
    /// variable.
    pub fn degrees_ok(&self) -> bool {
        [&self.a, &self.b, &self.c].iter().all(|x| x.in_space(1, 1)) && self.d.in_space(2, 2)
    }

    /// Whether every shift is by a constant quaternion.
    pub fn shifts_constant(&self) -> bool {
        self.transforms.iter().all(|s| match s {
            Step::Shift { t } => t.is_constant() || t.is_zero(),
            _ => true,
        })
    }

    /// Exchanges `u` and `v` throughout.
    pub fn swap_vars(&self) -> Self {
        Self {
            a: self.a.swap_vars(),
            b: self.b.swap_vars(),
            c: self.c.swap_vars(),
            d: self.d.swap_vars(),
            backend: self.backend,
            transforms: self.transforms.iter().map(Step::swap_vars).collect(),
        }
    }

    /// Prepends `steps` to the recorded transforms.
    pub fn after(mut self, steps: &[Step<S>]) -> Self {
        let mut all = steps.to_vec();
        all.append(&mut self.transforms);
        self.transforms = all;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SolverError> {
        serde_json::from_str(text).map_err(|e| SolverError::Malformed(e.to_string()))
    }
}
