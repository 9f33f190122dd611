use bicircle_core::fixtures::PolyRng;
use bicircle_core::quatpoly::{QPoly, Quaternion, RPoly, Var};
use bicircle_core::scalar::FieldElement;
use bicircle_core::solver::{PythTuple, Triple};
use proptest::prelude::*;

type F = FieldElement;
type Q = QPoly<F>;

/// `a + b sqrt2 + c sqrt3 + d sqrt6` with small rational coordinates.
fn field() -> impl Strategy<Value = F> {
    let coord = (-6i64..=6, 1i64..=4);
    (coord.clone(), coord.clone(), coord.clone(), coord).prop_map(|(a, b, c, d)| {
        F::ratio(a.0, a.1)
            + F::ratio(b.0, b.1) * F::sqrt_of(2)
            + F::ratio(c.0, c.1) * F::sqrt_of(3)
            + F::ratio(d.0, d.1) * F::sqrt_of(6)
    })
}

fn quaternion() -> impl Strategy<Value = Quaternion<F>> {
    (field(), field(), field(), field()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn qpoly(m: u32, n: u32) -> impl Strategy<Value = Q> {
    any::<u64>().prop_map(move |seed| PolyRng::new(seed).quat_poly(m, n))
}

/// Valid triple `(|AC|^2 D, ABCD, |B|^2 D)` from random factors.
fn triple() -> impl Strategy<Value = Triple<F>> {
    any::<u64>().prop_map(|seed| {
        let mut rng = PolyRng::new(seed);
        let (a, b, c) = (rng.quat_poly(1, 0), rng.quat_poly(1, 1), rng.quat_poly(0, 1));
        Triple::from_factors(&a, &b, &c, &rng.real_poly(1, 0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in field(), b in field(), c in field()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), F::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), F::one());
        }
    }

    #[test]
    fn sign_agrees_with_float(a in field(), b in field()) {
        let x = a.to_f64();
        if x.abs() > 1e-9 {
            prop_assert_eq!(a.signum(), if x > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!((a.clone() * b.clone()).signum(), a.signum() * b.signum());
    }

    #[test]
    fn sqrt_of_square(a in field()) {
        let root = (a.clone() * a.clone()).sqrt_adjoin().unwrap();
        let abs = if a.signum() < 0 { -a } else { a };
        prop_assert_eq!(root, abs);
    }

    #[test]
    fn quaternion_norm_multiplicative(p in quaternion(), q in quaternion()) {
        prop_assert_eq!((&p * &q).norm(), p.norm() * q.norm());
        prop_assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
    }

    #[test]
    fn poly_norm_and_conj(a in qpoly(1, 1), b in qpoly(2, 1)) {
        let ab = &a * &b;
        prop_assert_eq!(ab.norm(), &a.norm() * &b.norm());
        prop_assert_eq!(ab.conj(), &b.conj() * &a.conj());
    }

    #[test]
    fn division_round_trip(g in qpoly(2, 2), seed in any::<u64>()) {
        let mut rng = PolyRng::new(seed);
        let f = &Q::u().pow(2).scale_left(&rng.nonzero_quaternion()) + &rng.quat_poly(1, 1);
        let (quot, rem) = g.left_div_rem(&f, Var::U).unwrap();
        prop_assert_eq!(&(&f * &quot) + &rem, g.clone());
        prop_assert!(rem.degu().unwrap_or(0) < 2);
        let (quot, rem) = g.right_div_rem(&f, Var::U).unwrap();
        prop_assert_eq!(&(&quot * &f) + &rem, g.clone());
        let prod = &f * &g;
        prop_assert_eq!(prod.left_divide(&f).unwrap(), g);
    }

    #[test]
    fn transform_invariance(t in triple(), shift in qpoly(1, 1)) {
        prop_assert!(t.is_valid());
        let moved = t.transform(&shift);
        prop_assert_eq!(moved.q.norm(), &moved.p * &moved.r);
        // shifting back by -T restores the triple
        let back = moved.transform(&(&Q::zero() - &shift));
        prop_assert_eq!(back, t);
    }

    #[test]
    fn tuple_triple_round_trip(t in triple()) {
        let x = PythTuple::from_triple(&t).unwrap();
        prop_assert!(x.is_valid());
        prop_assert_eq!(x.to_triple().unwrap(), t);
    }

    #[test]
    fn tuple_from_factors_is_pythagorean(seed in any::<u64>()) {
        let mut rng = PolyRng::new(seed);
        let (a, b, c) = (rng.quat_poly(1, 0), rng.quat_poly(1, 1), rng.quat_poly(0, 1));
        let d = rng.real_poly(1, 1);
        let x = PythTuple::from_abcd(&a, &b, &c, &d).unwrap();
        let sum = x.x[..5].iter().fold(RPoly::zero(), |acc, xi| &acc + &(xi * xi));
        prop_assert_eq!(sum, &x.x[5] * &x.x[5]);
    }
}
