use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// Largest trial divisor used when splitting off square factors.
const TRIAL_LIMIT: u64 = 1 << 22;

/// Prime factors of a square-free radicand, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `n = m^2 * s` with `s` square-free and fitting in `u64`.
///
/// Returns `None` when the square-free part is too large to be a radicand or
/// cannot be certified square-free.
pub(crate) fn square_free_split(n: &BigInt) -> Option<(BigInt, u64)> {
    debug_assert!(n.sign() != num_bigint::Sign::Minus);
    if n.is_zero() {
        return Some((BigInt::zero(), 1));
    }
    let root = n.sqrt();
    if &(&root * &root) == n {
        return Some((root, 1));
    }
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = 1u64;
    let mut p = 2u64;
    loop {
        let pb = BigInt::from(p);
        if &(&pb * &pb * &pb) > &rest || p > TRIAL_LIMIT {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            square *= pb.pow(e / 2);
            if e % 2 == 1 {
                free = free.checked_mul(p)?;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Every prime factor of `rest` exceeds p. If p^3 > rest there are at most
    // two of them, so `rest` is either a perfect square or square-free.
    let r = rest.sqrt();
    if &r * &r == rest {
        square *= r;
    } else {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb <= rest {
            return None;
        }
        free = free.checked_mul(rest.to_u64()?)?;
    }
    Some((square, free))
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Rational bounds `lo <= sqrt(m) <= hi` with `hi - lo <= 2^-bits`.
pub(crate) fn sqrt_bounds(m: u64, bits: u32) -> (Rational, Rational) {
    let scaled = BigInt::from(m) << (2 * bits as usize);
    let s = scaled.sqrt();
    let den = BigInt::one() << bits as usize;
    let lo = Rational::new(s.clone(), den.clone());
    let hi = if &s * &s == scaled {
        lo.clone()
    } else {
        Rational::new(s + 1, den)
    };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_parts() {
        assert_eq!(square_free_split(&BigInt::from(8)), Some((BigInt::from(2), 2)));
        assert_eq!(square_free_split(&BigInt::from(72)), Some((BigInt::from(6), 2)));
        assert_eq!(square_free_split(&BigInt::from(49)), Some((BigInt::from(7), 1)));
        assert_eq!(square_free_split(&BigInt::from(30)), Some((BigInt::from(1), 30)));
        // two large distinct primes survive trial division
        let n = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        assert_eq!(square_free_split(&n), Some((BigInt::one(), 1_000_003 * 998_244_353)));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(30), vec![2, 3, 5]);
        assert_eq!(prime_factors(2), vec![2]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn bounds_bracket_sqrt2() {
        let (lo, hi) = sqrt_bounds(2, 40);
        assert!(&lo * &lo <= Rational::from_integer(2.into()));
        assert!(&hi * &hi >= Rational::from_integer(2.into()));
    }
}
