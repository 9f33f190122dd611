//! Factorization of Pythagorean triples and 6-tuples of quaternion
//! polynomials.

mod bilinear;
mod certificate;
mod linear;
mod reducible;
mod theorem;
mod triple;
mod univariate;

use thiserror::Error;

pub use bilinear::{bilinear_factorizations, split_bilinear, split_small_r, BilinearSplit, SmallRSplit, SplitOrder};
pub use certificate::{Certificate, DivideScheme, Step};
pub use linear::{factor_linear_v, solve_linear_in_v, LinearFactors, Orientation};
pub use reducible::{is_reducible_linear_v, Reducibility};
pub use theorem::{solve_22, solve_triple_22};
pub use triple::{PythTuple, Triple};
pub use univariate::{solve_univariate, UnivariateSolution};

use crate::quatpoly::QuatPolyError;
use crate::realpoly::RealPolyError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("no admissible split: {0}")]
    NoSplit(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("exact factorization unavailable for {0}")]
    ExactFactorizationUnavailable(String),
    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] QuatPolyError),
    #[error(transparent)]
    RealPoly(#[from] RealPolyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
