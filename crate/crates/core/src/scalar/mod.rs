//! Coefficient fields.
//!
//! Two backends implement [`Scalar`]: [`FieldElement`], exact arithmetic in
//! the rationals extended by finitely many real square roots, and [`Approx`],
//! binary64 with a fixed zero tolerance. Everything above this module is
//! generic over the backend.

mod approx;
mod field;
mod radical;
mod text;
mod tower;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use approx::{Approx, APPROX_TOL};
pub use field::{FieldElement, Rational};
pub use tower::{FieldTower, MAX_TOWER_DEPTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("towers {0} and {1} do not fit in one tower of depth at most 4")]
    IncompatibleTowers(String, String),
    #[error("square root of negative element {0}")]
    NegativeRadicand(String),
    #[error("adjoining a square root of {0} needs more than 4 radicands")]
    TowerDepthExceeded(String),
    #[error("no square root of {0} in any tower of depth at most 4")]
    NotRepresentable(String),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Which arithmetic produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Approx,
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Approx => "approx",
        })
    }
}

/// A real field usable as polynomial coefficients.
///
/// `is_zero` is structural for the exact backend and tolerance based for the
/// approximate one; algorithms must only test for zero through it.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + FromStr<Err = ScalarError>
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    fn inv(&self) -> Result<Self, ScalarError>;
    fn div_ref(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// -1, 0 or 1.
    fn signum(&self) -> i8;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Result<Self, ScalarError>;

    /// Guess an element close to `x`. Callers must verify the guess.
    fn recognize(x: f64) -> Option<Self>;

    /// Primes whose square roots occur in this element.
    fn primes(&self) -> Vec<u64> {
        Vec::new()
    }

    /// Image under the field automorphism `sqrt(p) -> -sqrt(p)` for each
    /// prime `p` in `flip`.
    fn flip_primes(&self, _flip: &[u64]) -> Self {
        self.clone()
    }
}
