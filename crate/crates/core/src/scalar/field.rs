use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::radical::{gcd_u64, prime_factors, sqrt_bounds, square_free_split};
use super::tower::{FieldTower, MAX_TOWER_DEPTH};
use super::{Backend, Scalar, ScalarError};

pub type Rational = num_rational::BigRational;

/// An element of `Q(sqrt(d1), ..., sqrt(dk))`.
///
/// Stored as a sparse sum `sum c_m * sqrt(m)` over square-free radicands `m`
/// (with `m = 1` the rational part). Square roots of distinct square-free
/// integers are linearly independent over the rationals, so the sorted,
/// zero-free term list is canonical and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElement {
    terms: Vec<(u64, Rational)>,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl FieldElement {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(1, q)] }
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `sqrt(n)` for a non-negative integer, reduced to `m * sqrt(s)`.
    pub fn sqrt_of(n: u64) -> Self {
        let (m, s) = square_free_split(&BigInt::from(n)).expect("u64 always splits");
        Self::from_terms(vec![(s, Rational::from_integer(m))])
    }

    pub(crate) fn from_terms(raw: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
        for (m, c) in raw {
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `(radicand, coefficient)` pairs ordered by radicand.
    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == 1)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(1, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of `sqrt(m)` for a square-free `m`.
    pub fn coefficient(&self, m: u64) -> Rational {
        self.terms
            .iter()
            .find(|(r, _)| *r == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().map(|(m, _)| *m).filter(|m| *m != 1)
    }

    /// The smallest tower containing this element.
    pub fn tower(&self) -> FieldTower {
        FieldTower::spanned_by(self.radicands()).expect("element radicands always span a tower")
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.radicands().flat_map(prime_factors).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Writes `self = alpha + beta * sqrt(p)` where neither part involves `p`.
    fn split_at_prime(&self, p: u64) -> (Self, Self) {
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for (m, c) in &self.terms {
            if m % p == 0 {
                beta.push((m / p, c.clone()));
            } else {
                alpha.push((*m, c.clone()));
            }
        }
        (Self::from_terms(alpha), Self::from_terms(beta))
    }

    fn mul_sqrt(&self, s: u64) -> Self {
        self.clone() * Self::from_terms(vec![(s, Rational::one())])
    }

    fn scale(&self, q: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c * q)))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // 1/(a + b sqrt p) = (a - b sqrt p) / (a^2 - p b^2); the denominator has
        // one prime fewer and is nonzero because sqrt(p) is irrational over it.
        let p = *self.primes().last().expect("irrational element has a prime");
        let (a, b) = self.split_at_prime(p);
        let norm = a.clone() * a.clone() - b.clone() * b.clone() * Self::from_integer(p as i64);
        let conj = a - b.mul_sqrt(p);
        Ok(conj * norm.inv()?)
    }

    /// Interval `[lo, hi]` containing the real value, built from square-root
    /// bounds of width `2^-bits`.
    fn enclose(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (m, c) in &self.terms {
            if *m == 1 {
                lo += c;
                hi += c;
                continue;
            }
            let (sl, sh) = sqrt_bounds(*m, bits);
            if c.is_positive() {
                lo += c * sl;
                hi += c * sh;
            } else {
                lo += c * sh;
                hi += c * sl;
            }
        }
        (lo, hi)
    }

    fn float_estimate(&self) -> (f64, f64) {
        let mut value = 0.0;
        let mut magnitude = 0.0;
        for (m, c) in &self.terms {
            let t = c.to_f64().unwrap_or(f64::NAN) * (*m as f64).sqrt();
            value += t;
            magnitude += t.abs();
        }
        (value, magnitude)
    }

    /// Exact sign by interval refinement with doubling precision.
    pub fn signum(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if let Some(q) = self.as_rational() {
            return if q.is_positive() { 1 } else { -1 };
        }
        let (value, magnitude) = self.float_estimate();
        if value.is_finite() && magnitude.is_finite() && value.abs() > 1e-9 * magnitude {
            return if value > 0.0 { 1 } else { -1 };
        }
        let mut bits = 64;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            // A nonzero element is bounded away from zero, so this terminates.
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        let mut bits = 80;
        loop {
            let (lo, hi) = self.enclose(bits);
            let width = &hi - &lo;
            let scale = if lo.abs() < hi.abs() { lo.abs() } else { hi.abs() };
            let tiny = Rational::new(BigInt::one(), BigInt::one() << 1100usize);
            if width <= &scale / Rational::from_integer(BigInt::one() << 62usize) || scale < tiny {
                let mid = (lo + hi) / rat(2);
                return mid.to_f64().unwrap_or(f64::NAN);
            }
            bits *= 2;
        }
    }

    /// A square root in the smallest tower extending the current one.
    pub fn sqrt_adjoin(&self) -> Result<Self, ScalarError> {
        match self.signum() {
            0 => return Ok(Self::zero()),
            -1 => return Err(ScalarError::NegativeRadicand(self.to_string())),
            _ => {}
        }
        let root = sqrt_search(self, 12).ok_or_else(|| ScalarError::NotRepresentable(self.to_string()))?;
        debug_assert!(&root * &root == *self);
        let joint = FieldTower::spanned_by(self.radicands().chain(root.radicands()))
            .map_err(|_| ScalarError::TowerDepthExceeded(self.to_string()))?;
        if joint.depth() > MAX_TOWER_DEPTH {
            return Err(ScalarError::TowerDepthExceeded(self.to_string()));
        }
        Ok(root)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.tower().join(&other.tower())?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.tower().join(&other.tower())?;
        Ok(self * other)
    }

    /// Continued-fraction guess of a rational close to `x`.
    pub fn rational_near(x: f64, rel_tol: f64) -> Option<Rational> {
        if !x.is_finite() {
            return None;
        }
        let tol = rel_tol * x.abs().max(1.0);
        // convergents h/k of the continued fraction of x
        let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
        let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
        let mut rest = x;
        for _ in 0..40 {
            let a = rest.floor();
            if a.abs() > 1e15 {
                return None;
            }
            let ai = BigInt::from(a as i64);
            let h2 = &ai * &h1 + &h0;
            let k2 = &ai * &k1 + &k0;
            h0 = std::mem::replace(&mut h1, h2);
            k0 = std::mem::replace(&mut k1, k2);
            let approx = Rational::new(h1.clone(), k1.clone());
            if (approx.to_f64()? - x).abs() <= tol {
                return Some(approx);
            }
            let frac = rest - a;
            if frac.abs() < 1e-300 {
                return None;
            }
            rest = 1.0 / frac;
        }
        None
    }
}

/// Square root of a non-negative rational, possibly introducing a radicand.
fn sqrt_rational(q: &Rational) -> Option<FieldElement> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer() * q.denom();
    let (m, s) = square_free_split(&n)?;
    Some(FieldElement::from_terms(vec![(s, Rational::new(m, q.denom().clone()))]))
}

/// Denesting search: for `a = alpha + beta sqrt(p)` a root has the form
/// `x0 + beta/(2 x0) sqrt(p)` with `x0^2 = (alpha +- sqrt(alpha^2 - p beta^2))/2`.
fn sqrt_search(a: &FieldElement, fuel: u32) -> Option<FieldElement> {
    if a.is_zero() {
        return Some(FieldElement::zero());
    }
    if a.signum() < 0 {
        return None;
    }
    if let Some(q) = a.as_rational() {
        return sqrt_rational(&q);
    }
    if fuel == 0 {
        return None;
    }
    let p = *a.primes().last()?;
    let (alpha, beta) = a.split_at_prime(p);
    let norm = &alpha * &alpha - &(&beta * &beta) * &FieldElement::from_integer(p as i64);
    let c = sqrt_search(&norm, fuel - 1)?;
    if c.primes().contains(&p) {
        return None;
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for c in [c.clone(), -c] {
        let h = (&alpha + &c).scale(&half);
        if h.is_zero() {
            continue;
        }
        let Some(x0) = sqrt_search(&h, fuel - 1) else { continue };
        if x0.is_zero() {
            continue;
        }
        let y = &beta * &(&x0 + &x0).inv().ok()?;
        let candidate = &x0 + &y.mul_sqrt(p);
        if &(&candidate * &candidate) == a {
            // prefer the positive root
            return Some(if candidate.signum() < 0 { -candidate } else { candidate });
        }
    }
    None
}

fn merge(a: &[(u64, Rational)], b: &[(u64, Rational)], negate_b: bool) -> FieldElement {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let c = if negate_b { -b[j].1.clone() } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    FieldElement { terms: out }
}

fn product(a: &FieldElement, b: &FieldElement) -> FieldElement {
    if a.is_zero() || b.is_zero() {
        return FieldElement::zero();
    }
    if let ([(1, x)], [(1, y)]) = (a.terms.as_slice(), b.terms.as_slice()) {
        return FieldElement::from_rational(x * y);
    }
    let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
    for (m, c) in &a.terms {
        for (n, d) in &b.terms {
            let g = gcd_u64(*m, *n);
            let radicand = u128::from(m / g) * u128::from(n / g);
            let radicand = u64::try_from(radicand).expect("radicand overflow");
            let coeff = c * d * Rational::from_integer(BigInt::from(g));
            raw.push((radicand, coeff));
        }
    }
    FieldElement::from_terms(raw)
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        product(&self, &rhs)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        product(self, rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

impl Scalar for FieldElement {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn from_i64(n: i64) -> Self {
        FieldElement::from_integer(n)
    }
    fn from_rational(q: &Rational) -> Self {
        FieldElement::from_rational(q.clone())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(1, c)] if c.is_one())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        FieldElement::inv(self)
    }
    fn signum(&self) -> i8 {
        FieldElement::signum(self)
    }
    fn to_f64(&self) -> f64 {
        FieldElement::to_f64(self)
    }
    fn sqrt(&self) -> Result<Self, ScalarError> {
        self.sqrt_adjoin()
    }
    fn recognize(x: f64) -> Option<Self> {
        Self::rational_near(x, 1e-10).map(FieldElement::from_rational)
    }
    fn primes(&self) -> Vec<u64> {
        FieldElement::primes(self)
    }
    fn flip_primes(&self, flip: &[u64]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let odd = flip.iter().filter(|p| m % *p == 0).count() % 2 == 1;
            (*m, if odd { -c.clone() } else { c.clone() })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> FieldElement {
        FieldElement::sqrt_of(2)
    }

    #[test]
    fn identity_and_defining_relation() {
        assert_eq!(FieldElement::one() * sqrt2(), sqrt2());
        assert_eq!(sqrt2() * sqrt2(), FieldElement::from_integer(2));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let a = FieldElement::one() + sqrt2();
        let expected = sqrt2() - FieldElement::one();
        // (1 + sqrt2)(-1 + sqrt2) = 2 - 1 = 1
        assert_eq!(a.clone() * expected.clone(), FieldElement::one());
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(FieldElement::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn nested_inverse() {
        let a = FieldElement::from_integer(3) + sqrt2() + FieldElement::sqrt_of(3) + FieldElement::sqrt_of(30);
        assert_eq!(&a * &a.inv().unwrap(), FieldElement::one());
    }

    #[test]
    fn sqrt_cases() {
        let four = FieldElement::from_integer(4);
        assert_eq!(four.sqrt_adjoin().unwrap(), FieldElement::from_integer(2));
        assert_eq!(FieldElement::from_integer(2).sqrt_adjoin().unwrap(), sqrt2());
        let eight = FieldElement::from_integer(8);
        let r = eight.sqrt_adjoin().unwrap();
        assert_eq!(r, FieldElement::from_integer(2) * sqrt2());
        assert_eq!(r.tower(), FieldTower::new(vec![2]).unwrap());
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2 denests
        let a = FieldElement::from_integer(3) + FieldElement::from_integer(2) * sqrt2();
        assert_eq!(a.sqrt_adjoin().unwrap(), FieldElement::one() + sqrt2());
        // 2 - sqrt2 > 0 does not denest over Q(sqrt2): sqrt(2 - sqrt 2) is quartic
        let b = FieldElement::from_integer(2) - sqrt2();
        assert!(matches!(b.sqrt_adjoin(), Err(ScalarError::NotRepresentable(_))));
        assert!(matches!(
            FieldElement::from_integer(-1).sqrt_adjoin(),
            Err(ScalarError::NegativeRadicand(_))
        ));
    }

    #[test]
    fn sqrt_of_2_sqrt2_plus_3_times_other() {
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
        let a = FieldElement::from_integer(5) + FieldElement::from_integer(2) * FieldElement::sqrt_of(6);
        let r = a.sqrt_adjoin().unwrap();
        assert_eq!(&r * &r, a);
    }

    #[test]
    fn depth_limit() {
        let mut x = FieldElement::zero();
        for p in [2u64, 3, 5, 7] {
            x = x + FieldElement::sqrt_of(p);
        }
        assert_eq!(x.tower().depth(), 4);
        let err = (x.clone() * x.clone() + FieldElement::from_integer(11)).sqrt_adjoin();
        assert!(err.is_err());
        assert!(FieldElement::from_integer(11).sqrt_adjoin().is_ok());
        assert!(matches!(
            x.checked_mul(&FieldElement::sqrt_of(11)),
            Err(ScalarError::IncompatibleTowers(_, _))
        ));
    }

    #[test]
    fn floats() {
        assert_eq!(FieldElement::ratio(1, 2).to_f64(), 0.5);
        assert_eq!(sqrt2().to_f64(), 1.4142135623730951);
        assert_eq!((FieldElement::one() + sqrt2()).to_f64(), 2.414213562373095);
    }

    #[test]
    fn sign_of_near_cancellation() {
        // 99/70 approximates sqrt 2 from above: 99 - 70 sqrt2 > 0 but tiny
        let a = FieldElement::from_integer(99) - FieldElement::from_integer(70) * sqrt2();
        assert_eq!(a.signum(), 1);
        // 665857/470832 - sqrt2 ~ 1.6e-12
        let b = FieldElement::ratio(665857, 470832) - sqrt2();
        assert_eq!(b.signum(), 1);
        assert_eq!((-b).signum(), -1);
    }

    #[test]
    fn recognize_rationals() {
        let q = FieldElement::rational_near(42.0 / 23.0, 1e-12).unwrap();
        assert_eq!(q, Rational::new(42.into(), 23.into()));
    }
}
