//! Property tests for the scalar layer: ball containment of exact rational
//! arithmetic, pi-Laurent ring laws, and the rising-factorial recurrence.

use invdelta_core::numerics::{pi_ball, rising_factorial, Ball, PiLaurent};
use proptest::prelude::*;
use rug::Rational;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| Rational::from((n, d)))
}

fn pilaurent_strategy() -> impl Strategy<Value = PiLaurent> {
    prop::collection::vec((-5i64..=5, -50i64..50, 1i64..20), 0..5).prop_map(|terms| {
        let mut p = PiLaurent::zero();
        for (pow, n, d) in terms {
            p = &p + &PiLaurent::from_term(pow, Rational::from((n, d)));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ball_contains_exact_rational_arithmetic(
        a in rational_strategy(),
        b in rational_strategy(),
        c in rational_strategy(),
        d in rational_strategy(),
    ) {
        prop_assume!(d != 0);
        let prec = 96u32;
        let (ab, bb, cb, db) = (
            Ball::from_rational(&a, prec),
            Ball::from_rational(&b, prec),
            Ball::from_rational(&c, prec),
            Ball::from_rational(&d, prec),
        );
        // (a b + c) / d - a^2
        let exact = (a.clone() * b.clone() + c.clone()) / d.clone() - a.clone() * a.clone();
        let ball = ab.mul(&bb).add(&cb).div(&db).sub(&ab.square());
        prop_assert!(ball.contains_rational(&exact));
        // nested: (a - b) * (c + d)
        let exact2 = (a.clone() - b.clone()) * (c.clone() + d.clone());
        let ball2 = ab.sub(&bb).mul(&cb.add(&db));
        prop_assert!(ball2.contains_rational(&exact2));
    }

    #[test]
    fn ball_monotone_function_containment(a in 1i64..5000, d in 1i64..100) {
        let q = Rational::from((a, d));
        let prec = 128u32;
        let b = Ball::from_rational(&q, prec);
        // ln(exp(q)) and sqrt(q)^2 both contain q
        let roundtrip = b.exp().ln();
        prop_assert!(roundtrip.contains_rational(&q));
        let sq = b.sqrt().square();
        prop_assert!(sq.contains_rational(&q));
    }

    #[test]
    fn pilaurent_ring_laws(
        p in pilaurent_strategy(),
        q in pilaurent_strategy(),
        r in pilaurent_strategy(),
    ) {
        // commutativity
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        // associativity
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        // distributivity
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        // identity
        prop_assert_eq!(&p * &PiLaurent::one(), p.clone());
    }

    #[test]
    fn pilaurent_eval_is_ring_homomorphism(
        p in pilaurent_strategy(),
        q in pilaurent_strategy(),
    ) {
        let pi = pi_ball(192);
        let lhs = (&p * &q).eval(&pi);
        let rhs = p.eval(&pi).mul(&q.eval(&pi));
        // Both enclose the same real number, so they must overlap.
        prop_assume!(lhs.is_finite() && rhs.is_finite());
        prop_assert!(
            lhs.lower() <= rhs.upper() && rhs.lower() <= lhs.upper(),
            "disjoint enclosures for the same product"
        );
    }

    #[test]
    fn rising_factorial_recurrence_random(n in -40i64..40, d in 1i64..12, m in 0u32..12) {
        let b = Rational::from((n, d));
        let lhs = rising_factorial(&b, m + 1);
        let rhs = rising_factorial(&b, m) * (b.clone() + Rational::from(m));
        prop_assert_eq!(lhs, rhs);
    }
}
