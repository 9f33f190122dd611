//! Quaternions and bivariate polynomials with quaternion or real coefficients.
//!
//! The variables `u`, `v` commute with each other and with the coefficients,
//! so `(a u^i v^j)(b u^k v^l) = (ab) u^(i+k) v^(j+l)`.

mod json;
mod poly;
mod quaternion;

use thiserror::Error;

pub use json::{PolyJson, TermJson};
pub use poly::{Coeff, Poly, QPoly, RPoly, Var};
pub use quaternion::Quaternion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuatPolyError {
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("divisor must involve only the division variable")]
    DivisorNotUnivariate,
    #[error("leading coefficient of the divisor is not an invertible constant")]
    LeadingCoefficientNotInvertible,
    #[error("polynomial is not divisible by the given factor")]
    NotDivisible,
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}
