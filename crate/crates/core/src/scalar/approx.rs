use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::ToPrimitive;

use super::{Backend, FieldElement, Rational, Scalar, ScalarError};

/// Absolute tolerance below which an [`Approx`] counts as zero.
pub const APPROX_TOL: f64 = 1e-9;

/// Binary64 scalar with a tolerance-based zero test.
#[derive(Clone, Copy, Debug, Default, PartialOrd)]
pub struct Approx(pub f64);

impl Approx {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).abs() <= APPROX_TOL
    }
}

impl From<f64> for Approx {
    fn from(x: f64) -> Self {
        Approx(x)
    }
}

impl From<&FieldElement> for Approx {
    fn from(x: &FieldElement) -> Self {
        Approx(x.to_f64())
    }
}

impl Add for Approx {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Approx(self.0 + rhs.0)
    }
}

impl Sub for Approx {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Approx(self.0 - rhs.0)
    }
}

impl Mul for Approx {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Approx(self.0 * rhs.0)
    }
}

impl Neg for Approx {
    type Output = Self;
    fn neg(self) -> Self {
        Approx(-self.0)
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FromStr for Approx {
    type Err = ScalarError;

    /// Accepts plain floats as well as exact text such as `1/2 + sqrt(2)`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        if let Ok(x) = s.trim().parse::<f64>() {
            return Ok(Approx(x));
        }
        s.parse::<FieldElement>().map(|e| Approx(e.to_f64()))
    }
}

impl Scalar for Approx {
    const BACKEND: Backend = Backend::Approx;

    fn zero() -> Self {
        Approx(0.0)
    }
    fn one() -> Self {
        Approx(1.0)
    }
    fn from_i64(n: i64) -> Self {
        Approx(n as f64)
    }
    fn from_rational(q: &Rational) -> Self {
        Approx(q.to_f64().unwrap_or(f64::NAN))
    }
    fn is_zero(&self) -> bool {
        self.0.abs() <= APPROX_TOL
    }
    fn add_ref(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        *self - *other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        if self.0 == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Approx(1.0 / self.0))
        }
    }
    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.0 > 0.0 {
            1
        } else {
            -1
        }
    }
    fn to_f64(&self) -> f64 {
        self.0
    }
    fn sqrt(&self) -> Result<Self, ScalarError> {
        if self.0 < -APPROX_TOL {
            Err(ScalarError::NegativeRadicand(self.to_string()))
        } else {
            Ok(Approx(self.0.max(0.0).sqrt()))
        }
    }
    fn recognize(x: f64) -> Option<Self> {
        x.is_finite().then_some(Approx(x))
    }
}
