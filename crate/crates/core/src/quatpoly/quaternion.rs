use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Approx, FieldElement, Scalar, ScalarError};

/// `w + x i + y j + z k` over a real scalar field.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(S::from_i64(w), S::from_i64(x), S::from_i64(y), S::from_i64(z))
    }

    pub fn real(w: S) -> Self {
        Self::new(w, S::zero(), S::zero(), S::zero())
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn components(&self) -> [&S; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn from_components([w, x, y, z]: [S; 4]) -> Self {
        Self::new(w, x, y, z)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    /// `q * conj(q) = w^2 + x^2 + y^2 + z^2`.
    pub fn norm(&self) -> S {
        self.w
            .mul_ref(&self.w)
            .add_ref(&self.x.mul_ref(&self.x))
            .add_ref(&self.y.mul_ref(&self.y))
            .add_ref(&self.z.mul_ref(&self.z))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.w.mul_ref(s), self.x.mul_ref(s), self.y.mul_ref(s), self.z.mul_ref(s))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quaternion<T> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn to_approx(&self) -> Quaternion<Approx> {
        self.map(|s| Approx(s.to_f64()))
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.w.to_f64(), self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    /// Vector part `(x, y, z)`.
    pub fn vector(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    fn hamilton(a: &Self, b: &Self) -> Self {
        let (aw, ax, ay, az) = (&a.w, &a.x, &a.y, &a.z);
        let (bw, bx, by, bz) = (&b.w, &b.x, &b.y, &b.z);
        Self::new(
            aw.mul_ref(bw).sub_ref(&ax.mul_ref(bx)).sub_ref(&ay.mul_ref(by)).sub_ref(&az.mul_ref(bz)),
            aw.mul_ref(bx).add_ref(&ax.mul_ref(bw)).add_ref(&ay.mul_ref(bz)).sub_ref(&az.mul_ref(by)),
            aw.mul_ref(by).sub_ref(&ax.mul_ref(bz)).add_ref(&ay.mul_ref(bw)).add_ref(&az.mul_ref(bx)),
            aw.mul_ref(bz).add_ref(&ax.mul_ref(by)).sub_ref(&ay.mul_ref(bx)).add_ref(&az.mul_ref(bw)),
        )
    }
}

impl Quaternion<FieldElement> {
    /// Parses text components, e.g. `["1", "0", "-1/2*sqrt(2)", "0"]`.
    pub fn parse(parts: [&str; 4]) -> Result<Self, ScalarError> {
        Ok(Self::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?, parts[3].parse()?))
    }
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a, S: Scalar> Add<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn add(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.w.add_ref(&rhs.w),
            self.x.add_ref(&rhs.x),
            self.y.add_ref(&rhs.y),
            self.z.add_ref(&rhs.z),
        )
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a, S: Scalar> Sub<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn sub(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::new(
            self.w.sub_ref(&rhs.w),
            self.x.sub_ref(&rhs.x),
            self.y.sub_ref(&rhs.y),
            self.z.sub_ref(&rhs.z),
        )
    }
}

impl<S: Scalar> Mul for Quaternion<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Quaternion::hamilton(&self, &rhs)
    }
}

impl<'a, S: Scalar> Mul<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, rhs: &Quaternion<S>) -> Quaternion<S> {
        Quaternion::hamilton(self, rhs)
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, unit) in [(&self.w, ""), (&self.x, "i"), (&self.y, "j"), (&self.z, "k")] {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (unit, c.is_one()) {
                ("", _) => write!(f, "{c}")?,
                (u, true) => f.write_str(u)?,
                (u, false) => write!(f, "({c})*{u}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Quaternion<FieldElement>;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Q::i(), Q::j(), Q::k());
        let minus_one = -Q::one();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -k);
    }

    #[test]
    fn norm_and_inverse() {
        let q = Q::from_ints(1, 2, -3, 4);
        assert_eq!(q.norm(), FieldElement::from_integer(30));
        assert_eq!(&q * &q.inv().unwrap(), Q::one());
        assert_eq!(&q * &q.conj(), Q::real(q.norm()));
        assert!(Q::zero().inv().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Q::from_ints(1, 0, 1, 0).to_string(), "1 + j");
        assert_eq!(Q::from_ints(0, -2, 0, 0).to_string(), "(-2)*i");
        assert_eq!(Q::zero().to_string(), "0");
    }
}
