//! Reference polynomials and seeded random generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quatpoly::{QPoly, Quaternion, RPoly};
use crate::scalar::FieldElement;
use crate::solver::Triple;

type F = FieldElement;

fn parse(parts: [&str; 4]) -> Quaternion<F> {
    Quaternion::parse(parts).expect("fixture literal parses")
}

fn lin_u(c: [&str; 4]) -> QPoly<F> {
    &QPoly::u() + &QPoly::quat(parse(c))
}

fn lin_v(c: [&str; 4]) -> QPoly<F> {
    &QPoly::v() + &QPoly::quat(parse(c))
}

/// `u^2 v^2 - 1 + (u^2 - v^2) i + 2uv j`, irreducible although its norm
/// splits.
pub fn beauregard_q() -> QPoly<F> {
    let u2 = QPoly::u().pow(2);
    let v2 = QPoly::v().pow(2);
    let i = QPoly::quat(Quaternion::i());
    let j = QPoly::quat(Quaternion::j());
    let uv = &QPoly::u() * &QPoly::v();
    let two_uv_j = (&uv * &j).scale_base(&F::from_integer(2));
    &(&(&(&u2 * &v2) - &QPoly::one()) + &(&(&u2 - &v2) * &i)) + &two_uv_j
}

/// `x^2 + s * sqrt(2) x + 1` in `u` (`var_u`) or `v`.
fn sqrt2_quadratic(var_u: bool, s: i64) -> RPoly<F> {
    let x = if var_u { RPoly::u() } else { RPoly::v() };
    let mid = F::sqrt_of(2) * F::from_integer(s);
    &(&(&x * &x) + &x.scale_base(&mid)) + &RPoly::one()
}

/// `(P, Q, R)` for [`beauregard_q`] with
/// `P = (u^2 - sqrt2 u + 1)(v^2 - sqrt2 v + 1)` and
/// `R = (u^2 + sqrt2 u + 1)(v^2 + sqrt2 v + 1)`.
pub fn beauregard_triple() -> Triple<F> {
    let p = &sqrt2_quadratic(true, -1) * &sqrt2_quadratic(false, -1);
    let r = &sqrt2_quadratic(true, 1) * &sqrt2_quadratic(false, 1);
    Triple::new_unchecked(p, beauregard_q(), r)
}

/// `A, B, C` with `transform(beauregard_triple(), j) = (|AC|^2, ABC, |B|^2)`.
pub fn beauregard_abc() -> [QPoly<F>; 3] {
    let h = "1/2*sqrt(2)";
    let mh = "-1/2*sqrt(2)";
    let a = &QPoly::quat(Quaternion::from_ints(1, 0, -1, 0)) * &lin_u(["0", mh, mh, "0"]);
    let b = &lin_v([h, "0", "0", h]) * &lin_u([h, h, "0", "0"]);
    let c = lin_v(["0", "0", mh, mh]);
    [a, b, c]
}

/// Six linear factors whose product is `(u^2 + 1)` times [`beauregard_q`].
pub fn six_factors() -> [QPoly<F>; 6] {
    let h = "1/2*sqrt(2)";
    let mh = "-1/2*sqrt(2)";
    [
        lin_u(["0", "0", mh, mh]),
        lin_v([h, mh, "0", "0"]),
        lin_u([h, "0", "0", h]),
        lin_u([mh, "0", "0", h]),
        lin_v([mh, h, "0", "0"]),
        lin_u(["0", "0", h, mh]),
    ]
}

/// Deterministic generator of small-integer test polynomials.
pub struct PolyRng {
    rng: ChaCha8Rng,
    bound: i64,
}

impl PolyRng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: 3,
        }
    }

    /// Integer coefficients are drawn from `-bound..=bound`.
    pub fn with_bound(seed: u64, bound: i64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
        }
    }

    pub fn int(&mut self) -> i64 {
        self.rng.random_range(-self.bound..=self.bound)
    }

    pub fn unit_f64(&mut self) -> f64 {
        self.rng.random_range(-1.0..=1.0)
    }

    pub fn quaternion(&mut self) -> Quaternion<F> {
        Quaternion::from_ints(self.int(), self.int(), self.int(), self.int())
    }

    pub fn nonzero_quaternion(&mut self) -> Quaternion<F> {
        loop {
            let q = self.quaternion();
            if !q.is_zero() {
                return q;
            }
        }
    }

    /// Random element of `H_mn`.
    pub fn quat_poly(&mut self, m: u32, n: u32) -> QPoly<F> {
        let mut out = QPoly::zero();
        for i in 0..=m {
            for j in 0..=n {
                out.add_term((i, j), self.quaternion());
            }
        }
        out
    }

    /// Random element of `H_mn` with nonzero `u^m v^n` coefficient.
    pub fn quat_poly_full(&mut self, m: u32, n: u32) -> QPoly<F> {
        let mut out = self.quat_poly(m, n);
        let lead = out.coeff(m, n);
        if lead.is_zero() {
            out.add_term((m, n), self.nonzero_quaternion());
        }
        out
    }

    pub fn real_poly(&mut self, m: u32, n: u32) -> RPoly<F> {
        let mut out = RPoly::zero();
        for i in 0..=m {
            for j in 0..=n {
                out.add_term((i, j), F::from_integer(self.int()));
            }
        }
        out
    }

    pub fn real_poly_full(&mut self, m: u32, n: u32) -> RPoly<F> {
        loop {
            let p = self.real_poly(m, n);
            if !p.coeff(m, n).is_zero() {
                return p;
            }
        }
    }
}
