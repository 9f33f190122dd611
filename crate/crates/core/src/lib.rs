//! Quaternionic polynomial factorization and doubly-circled surfaces.
//!
//! The algebra solves `Q * conj(Q) = P * R` for bivariate polynomials with
//! quaternion coefficients, which is equivalent to the Pythagorean 6-tuple
//! equation `X1^2 + ... + X5^2 = X6^2`. The geometry side generates and checks
//! surfaces that contain two circles through each point.

pub mod scalar;
pub mod quatpoly;
pub mod realpoly;
pub mod solver;
pub mod surface;
pub mod fixtures;
