use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Quaternion, QuatPolyError};
use crate::scalar::{Approx, Scalar, ScalarError};

/// Coefficient ring of a bivariate polynomial: a real [`Scalar`] or a
/// [`Quaternion`] over one.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Base: Scalar;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_base(s: Self::Base) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv(&self) -> Result<Self, ScalarError>;
    fn conj(&self) -> Self;
    fn scale(&self, s: &Self::Base) -> Self;
    /// Components in the basis `1, i, j, k`.
    fn to_parts(&self) -> [Self::Base; 4];
    /// `None` when the parts do not describe an element of this ring.
    fn from_parts(parts: [Self::Base; 4]) -> Option<Self>;
}

impl<S: Scalar> Coeff for S {
    type Base = S;

    fn zero() -> Self {
        S::zero()
    }
    fn one() -> Self {
        S::one()
    }
    fn from_base(s: S) -> Self {
        s
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        Scalar::add_ref(self, other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Scalar::sub_ref(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Scalar::mul_ref(self, other)
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        Scalar::inv(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn scale(&self, s: &S) -> Self {
        Scalar::mul_ref(self, s)
    }
    fn to_parts(&self) -> [S; 4] {
        [self.clone(), S::zero(), S::zero(), S::zero()]
    }
    fn from_parts([w, x, y, z]: [S; 4]) -> Option<Self> {
        (Scalar::is_zero(&x) && Scalar::is_zero(&y) && Scalar::is_zero(&z)).then_some(w)
    }
}

impl<S: Scalar> Coeff for Quaternion<S> {
    type Base = S;

    fn zero() -> Self {
        Quaternion::zero()
    }
    fn one() -> Self {
        Quaternion::one()
    }
    fn from_base(s: S) -> Self {
        Quaternion::real(s)
    }
    fn is_zero(&self) -> bool {
        Quaternion::is_zero(self)
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
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Result<Self, ScalarError> {
        Quaternion::inv(self)
    }
    fn conj(&self) -> Self {
        Quaternion::conj(self)
    }
    fn scale(&self, s: &S) -> Self {
        Quaternion::scale(self, s)
    }
    fn to_parts(&self) -> [S; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }
    fn from_parts(parts: [S; 4]) -> Option<Self> {
        Some(Quaternion::from_components(parts))
    }
}

/// One of the two polynomial variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn other(self) -> Self {
        match self {
            Var::U => Var::V,
            Var::V => Var::U,
        }
    }

    fn exponent(self, (i, j): (u32, u32)) -> u32 {
        match self {
            Var::U => i,
            Var::V => j,
        }
    }

    fn with_exponent(self, (i, j): (u32, u32), e: u32) -> (u32, u32) {
        match self {
            Var::U => (e, j),
            Var::V => (i, e),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::U => "u",
            Var::V => "v",
        })
    }
}

/// Sparse polynomial in commuting variables `u`, `v` whose coefficients need
/// not commute with each other.
///
/// The key `(i, j)` stands for `u^i v^j`; zero coefficients are never stored,
/// so equality is structural.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

/// Bivariate polynomial with quaternion coefficients.
pub type QPoly<S> = Poly<Quaternion<S>>;
/// Bivariate polynomial with real coefficients.
pub type RPoly<S> = Poly<S>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

fn grlex_key((i, j): (u32, u32)) -> (u32, u32) {
    (i + j, i)
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c);
        p
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    /// The variable `v`.
    pub fn v() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn var(var: Var) -> Self {
        match var {
            Var::U => Self::u(),
            Var::V => Self::v(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial in `var` from ascending coefficients.
    pub fn from_univariate(var: Var, coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(e, c)| (var.with_exponent((0, 0), e as u32), c)),
        )
    }

    pub fn add_term(&mut self, m: (u32, u32), c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn sub_term(&mut self, m: (u32, u32), c: &C) {
        self.add_term(m, c.neg_ref());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| *c == C::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == (0, 0))
    }

    pub fn constant_value(&self) -> Option<C> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    /// Degree in `u`, `None` for the zero polynomial.
    pub fn degu(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    /// Degree in `v`, `None` for the zero polynomial.
    pub fn degv(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    pub fn deg(&self, var: Var) -> Option<u32> {
        match var {
            Var::U => self.degu(),
            Var::V => self.degv(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Whether the polynomial lies in the space of degree at most `m` in `u`
    /// and at most `n` in `v`.
    pub fn in_space(&self, m: u32, n: u32) -> bool {
        self.degu().is_none_or(|d| d <= m) && self.degv().is_none_or(|d| d <= n)
    }

    /// Whether the polynomial does not involve `var`.
    pub fn is_free_of(&self, var: Var) -> bool {
        self.deg(var).is_none_or(|d| d == 0)
    }

    /// Leading term in graded lexicographic order with `u > v`.
    pub fn lead_term(&self) -> Option<((u32, u32), &C)> {
        self.terms.iter().max_by_key(|(m, _)| grlex_key(**m)).map(|(m, c)| (*m, c))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn scale_left(&self, c: &C) -> Self {
        self.map_coeffs(|x| c.mul_ref(x))
    }

    pub fn scale_right(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul_ref(c))
    }

    pub fn scale_base(&self, s: &C::Base) -> Self {
        self.map_coeffs(|x| x.scale(s))
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|((a, b), c)| ((a + i, b + j), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Coefficientwise conjugation; reverses products.
    pub fn conj(&self) -> Self {
        self.map_coeffs(C::conj)
    }

    /// Substitutes `u = u0`, `v = v0`.
    pub fn eval(&self, u0: &C::Base, v0: &C::Base) -> C {
        let mut acc = C::zero();
        for ((i, j), c) in &self.terms {
            let mut s = <C::Base as Scalar>::one();
            for _ in 0..*i {
                s = Scalar::mul_ref(&s, u0);
            }
            for _ in 0..*j {
                s = Scalar::mul_ref(&s, v0);
            }
            acc = acc.add_ref(&c.scale(&s));
        }
        acc
    }

    /// Coefficient of `var^k`, a polynomial in the other variable.
    pub fn coeff_in(&self, var: Var, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| var.exponent(**m) == k)
                .map(|(m, c)| (var.with_exponent(*m, 0), c.clone()))
                .collect(),
        }
    }

    /// Leading coefficient with respect to `var`.
    pub fn lead_in(&self, var: Var) -> Self {
        match self.deg(var) {
            Some(d) => self.coeff_in(var, d),
            None => Self::zero(),
        }
    }

    /// Inverse of [`Poly::coeff_in`]: `sum parts[k] * var^k`.
    pub fn from_coeffs_in(var: Var, parts: &[Self]) -> Self {
        let mut out = Self::zero();
        for (k, part) in parts.iter().enumerate() {
            for (m, c) in &part.terms {
                let e = var.exponent(*m) + k as u32;
                out.add_term(var.with_exponent(*m, e), c.clone());
            }
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    /// Partial derivative.
    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = var.exponent(*m);
            if e > 0 {
                let factor = <C::Base as Scalar>::from_i64(i64::from(e));
                out.add_term(var.with_exponent(*m, e - 1), c.scale(&factor));
            }
        }
        out
    }

    fn divide_exact(&self, f: &Self, left: bool) -> Result<Self, QuatPolyError> {
        let ((fi, fj), fc) = f.lead_term().ok_or(QuatPolyError::DivisorZero)?;
        let fc_inv = fc.inv().map_err(|_| QuatPolyError::LeadingCoefficientNotInvertible)?;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        // Lead monomials multiply in a monomial order, and quaternions have no
        // zero divisors, so the lead of f*g is lead(f)*lead(g).
        while let Some(((ri, rj), rc)) = rem.lead_term() {
            if ri < fi || rj < fj {
                return Err(QuatPolyError::NotDivisible);
            }
            let c = if left { fc_inv.mul_ref(rc) } else { rc.mul_ref(&fc_inv) };
            let t = Self::monomial(c, ri - fi, rj - fj);
            let sub = if left { f * &t } else { &t * f };
            rem = &rem - &sub;
            // guard against tolerance-based backends leaving the lead behind
            rem.terms.remove(&(ri, rj));
            quotient = &quotient + &t;
        }
        Ok(quotient)
    }

    /// `g` with `self = f * g`.
    pub fn left_divide(&self, f: &Self) -> Result<Self, QuatPolyError> {
        self.divide_exact(f, true)
    }

    /// `g` with `self = g * f`.
    pub fn right_divide(&self, f: &Self) -> Result<Self, QuatPolyError> {
        self.divide_exact(f, false)
    }

    fn div_rem_in(&self, f: &Self, var: Var, left: bool) -> Result<(Self, Self), QuatPolyError> {
        let n = f.deg(var).ok_or(QuatPolyError::DivisorZero)?;
        let lead = f
            .lead_in(var)
            .constant_value()
            .ok_or(QuatPolyError::LeadingCoefficientNotInvertible)?;
        let lead_inv = lead.inv().map_err(|_| QuatPolyError::LeadingCoefficientNotInvertible)?;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some(m) = rem.deg(var).filter(|m| *m >= n) {
            let l = rem.coeff_in(var, m);
            let l = if left { l.scale_left(&lead_inv) } else { l.scale_right(&lead_inv) };
            let shift = var.with_exponent((0, 0), m - n);
            let t = l.mul_monomial(shift.0, shift.1);
            let sub = if left { f * &t } else { &t * f };
            rem = &rem - &sub;
            let stale: Vec<_> = rem.terms.keys().filter(|k| var.exponent(**k) == m).copied().collect();
            for k in stale {
                rem.terms.remove(&k);
            }
            quotient = &quotient + &t;
        }
        Ok((quotient, rem))
    }

    /// `(g, r)` with `self = f * g + r` and `deg_var r < deg_var f`. The lead
    /// coefficient of `f` in `var` must be a nonzero constant.
    pub fn left_div_rem(&self, f: &Self, var: Var) -> Result<(Self, Self), QuatPolyError> {
        self.div_rem_in(f, var, true)
    }

    /// `(g, r)` with `self = g * f + r` and `deg_var r < deg_var f`.
    pub fn right_div_rem(&self, f: &Self, var: Var) -> Result<(Self, Self), QuatPolyError> {
        self.div_rem_in(f, var, false)
    }
}

impl<S: Scalar> Poly<S> {
    /// Embeds a real polynomial into the quaternion polynomials.
    pub fn to_quat(&self) -> QPoly<S> {
        self.map_coeffs(|c| Quaternion::real(c.clone()))
    }

    pub fn to_approx(&self) -> Poly<Approx> {
        self.map_coeffs(|c| Approx(c.to_f64()))
    }

    /// Division with remainder by a divisor that involves only `var`:
    /// `self = q * r + rem` with `deg_var rem < deg_var r`.
    pub fn div_rem_univariate(&self, r: &Self, var: Var) -> Result<(Self, Self), QuatPolyError> {
        if !r.is_free_of(var.other()) {
            return Err(QuatPolyError::DivisorNotUnivariate);
        }
        self.left_div_rem(r, var)
    }

    /// Exact division by a real polynomial.
    pub fn div_exact(&self, f: &Self) -> Result<Self, QuatPolyError> {
        self.left_divide(f)
    }

    /// Multiplies by a real number given as an integer.
    pub fn times_int(&self, n: i64) -> Self {
        self.scale_base(&S::from_i64(n))
    }
}

impl<S: Scalar> QPoly<S> {
    pub fn quat(q: Quaternion<S>) -> Self {
        Self::constant(q)
    }

    /// `self * conj(self)`, which is always real.
    pub fn norm(&self) -> RPoly<S> {
        let product = self * &self.conj();
        product
            .as_real()
            .unwrap_or_else(|| panic!("norm of {self} has a nonzero vector part"))
    }

    /// The four real components `X1 + i X2 + j X3 + k X4`.
    pub fn components(&self) -> [RPoly<S>; 4] {
        [
            self.map_coeffs(|q| q.w.clone()),
            self.map_coeffs(|q| q.x.clone()),
            self.map_coeffs(|q| q.y.clone()),
            self.map_coeffs(|q| q.z.clone()),
        ]
    }

    pub fn from_components(parts: [&RPoly<S>; 4]) -> Self {
        let units = [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()];
        let mut out = Self::zero();
        for (part, unit) in parts.into_iter().zip(units) {
            for (m, c) in part.terms() {
                out.add_term(*m, unit.scale(c));
            }
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms().all(|(_, q)| q.is_real())
    }

    pub fn as_real(&self) -> Option<RPoly<S>> {
        self.is_real().then(|| self.map_coeffs(|q| q.w.clone()))
    }

    /// Multiplication by a real polynomial, which commutes with everything.
    pub fn mul_real(&self, r: &RPoly<S>) -> Self {
        self * &r.to_quat()
    }

    /// Componentwise division with remainder by a real polynomial in `var`:
    /// `self = t * r + rem` with `deg_var rem < deg_var r`.
    pub fn div_rem_real(&self, r: &RPoly<S>, var: Var) -> Result<(Self, Self), QuatPolyError> {
        if r.is_zero() {
            return Err(QuatPolyError::DivisorZero);
        }
        if !r.is_free_of(var.other()) {
            return Err(QuatPolyError::DivisorNotUnivariate);
        }
        self.left_div_rem(&r.to_quat(), var)
    }

    /// Exact componentwise division by a real polynomial.
    pub fn div_real_exact(&self, r: &RPoly<S>) -> Result<Self, QuatPolyError> {
        let parts = self.components();
        let q: Vec<RPoly<S>> = parts.iter().map(|p| p.div_exact(r)).collect::<Result<_, _>>()?;
        Ok(Self::from_components([&q[0], &q[1], &q[2], &q[3]]))
    }

    /// Writes `self = h * q` with real `h` and constant `q` when possible.
    pub fn real_times_constant(&self) -> Option<(RPoly<S>, Quaternion<S>)> {
        let (_, lead) = self.lead_term()?;
        let lead_inv = lead.inv().ok()?;
        let h = self.scale_right(&lead_inv);
        let real = h.as_real()?;
        Some((real, lead.clone()))
    }

    pub fn to_approx(&self) -> QPoly<Approx> {
        self.map_coeffs(|q| q.to_approx())
    }
}

fn combine<C: Coeff>(a: &Poly<C>, b: &Poly<C>, negate: bool) -> Poly<C> {
    let mut out = a.clone();
    for (m, c) in &b.terms {
        if negate {
            out.sub_term(*m, c);
        } else {
            out.add_term(*m, c.clone());
        }
    }
    out
}

fn product<C: Coeff>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    let mut acc: BTreeMap<(u32, u32), C> = BTreeMap::new();
    for ((i, j), c) in &a.terms {
        for ((k, l), d) in &b.terms {
            let m = (i + k, j + l);
            let t = c.mul_ref(d);
            match acc.get_mut(&m) {
                Some(e) => *e = e.add_ref(&t),
                None => {
                    acc.insert(m, t);
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Poly { terms: acc }
}

impl<C: Coeff> Add for Poly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        combine(&self, &rhs, false)
    }
}

impl<'a, C: Coeff> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        combine(self, rhs, false)
    }
}

impl<C: Coeff> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        combine(&self, &rhs, true)
    }
}

impl<'a, C: Coeff> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        combine(self, rhs, true)
    }
}

impl<C: Coeff> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        product(&self, &rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        product(self, rhs)
    }
}

impl<C: Coeff> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(C::neg_ref)
    }
}

impl<'a, C: Coeff> Neg for &'a Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coeffs(C::neg_ref)
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Terms in graded lexicographic order, `u > v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| std::cmp::Reverse(grlex_key(*m)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let c = &self.terms[&(i, j)];
            let is_one = *c == C::one();
            let text = c.to_string();
            let bare = text.chars().enumerate().all(|(k, ch)| ch.is_ascii_digit() || ch == '/' || ch == '.' || (k == 0 && ch == '-'));
            let c = if bare { text } else { format!("({text})") };
            if (i, j) == (0, 0) {
                f.write_str(&c)?;
                continue;
            }
            if !is_one {
                write!(f, "{c}*")?;
            }
            let mut parts = Vec::new();
            for (name, e) in [("u", i), ("v", j)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    e => parts.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}
