//! Real polynomial algorithms: bivariate gcds and univariate factorization
//! into real factors of degree at most 2.

mod factor;
mod gcd;
mod roots;
pub(crate) mod upoly;

use thiserror::Error;

pub use factor::{factor_real_univariate, FactorOutcome, RealFactorization};
pub use gcd::{gcd, gcd_all, gcd_with_components, normalize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealPolyError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial involves both variables")]
    NotUnivariate,
}
