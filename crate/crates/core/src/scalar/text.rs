//! Canonical text form of exact scalars: `p/q + r/s*sqrt(d) - sqrt(e)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::radical::square_free_split;
use super::{FieldElement, Rational, ScalarError};

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().iter().enumerate() {
            let magnitude = if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                c.abs()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if *m == 1 {
                write_rational(f, &magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "sqrt({m})")?;
            } else {
                write_rational(f, &magnitude)?;
                write!(f, "*sqrt({m})")?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// One unsigned term: `q`, `sqrt(n)`, `q*sqrt(n)` or `sqrt(n)*q`.
fn parse_term(s: &str) -> Option<FieldElement> {
    let mut coeff = Rational::one();
    let mut radical = FieldElement::one();
    for factor in s.split('*') {
        let factor = factor.trim();
        if let Some(inner) = factor.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let n: BigInt = inner.trim().parse().ok()?;
            if n.is_negative() {
                return None;
            }
            let (m, d) = square_free_split(&n)?;
            radical = &radical * &FieldElement::from_terms(vec![(d, Rational::from_integer(m))]);
        } else {
            coeff *= parse_rational(factor)?;
        }
    }
    Some(&radical * &FieldElement::from_rational(coeff))
}

impl FromStr for FieldElement {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let text = s.trim();
        if text.is_empty() {
            return Err(err());
        }
        let mut total = FieldElement::zero();
        let mut sign_negative = false;
        let mut current = String::new();
        let mut depth = 0i32;
        let mut pending_sign = true;
        let flush = |term: &str, neg: bool, total: &mut FieldElement| -> Result<(), ScalarError> {
            let t = parse_term(term).ok_or_else(err)?;
            *total = if neg { &*total - &t } else { &*total + &t };
            Ok(())
        };
        for ch in text.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                    pending_sign = false;
                }
                ')' => {
                    depth -= 1;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if pending_sign {
                        if ch == '-' {
                            sign_negative = !sign_negative;
                        }
                        continue;
                    }
                    flush(&current, sign_negative, &mut total)?;
                    current.clear();
                    sign_negative = ch == '-';
                    pending_sign = true;
                }
                c if c.is_whitespace() => {}
                c => {
                    current.push(c);
                    pending_sign = false;
                }
            }
        }
        if current.is_empty() || depth != 0 {
            return Err(err());
        }
        flush(&current, sign_negative, &mut total)?;
        Ok(total)
    }
}
