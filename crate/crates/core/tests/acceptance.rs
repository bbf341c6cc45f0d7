//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! The exact sequence table is computed once and shared by every test in
//! this binary; everything asserted here is either exact arithmetic or a
//! certified ball comparison at the stated tolerance.

use invdelta_core::bessel;
use invdelta_core::expansion::{
    self, expansion_coeff, series_oracle, AsymptoticEvaluator, ExpansionCoeffSet,
};
use invdelta_core::inequalities::symbolic::{corollary_symbolic_check, CorollaryTarget};
use invdelta_core::inequalities::{conjecture_scan, scan, ScanOp};
use invdelta_core::numerics::{
    default_precision, factorial, pi_ball, Ball, PiLaurent,
};
use invdelta_core::rademacher;
use invdelta_core::seqcore::{convolution_oracle, SeqTable};
use rug::ops::Pow;
use rug::{Integer, Rational};
use std::sync::OnceLock;

const TABLE_MAX: u64 = 20_016;

fn table() -> &'static SeqTable {
    static TABLE: OnceLock<SeqTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = SeqTable::new(24);
        t.extend(TABLE_MAX).expect("table build");
        t
    })
}

#[test]
fn criterion_01_exact_oracle_agreement() {
    for k in [1u32, 2, 24] {
        let mut t = SeqTable::new(k);
        t.extend(5000).unwrap();
        let oracle = convolution_oracle(k, 5000).unwrap();
        assert_eq!(
            t.values(),
            &oracle[..],
            "recurrence and convolution oracle disagree for k = {k}"
        );
    }
    let t = table();
    assert_eq!(*t.get(0).unwrap(), 1);
    assert_eq!(*t.get(1).unwrap(), 24);
    assert_eq!(*t.get(2).unwrap(), 324);
    println!("criterion 1 (exact-oracle agreement, k in {{1,2,24}}, n <= 5000): PASS");
}

#[test]
fn criterion_02_rademacher_integer_resolution() {
    let t = table();
    let report = rademacher::calibrate(t, 2, 60).unwrap();
    assert!(report.all_resolved);
    assert_eq!(report.variant, "S(n-1,-1;k)");
    // The two resolved labels are the h -> -h mirror images of one sum; the
    // opposite sign class must have failed.
    assert_eq!(report.resolved_variants.len(), 2);
    assert_eq!(report.failed_variants.len(), 2);
    for n in 2..=500u64 {
        let res = rademacher::p24_via_rademacher(n).unwrap();
        assert_eq!(
            &res.value,
            t.get(n).unwrap(),
            "integer resolution mismatch at n = {n}"
        );
    }
    println!("criterion 2 (Rademacher integer resolution, 2 <= n <= 500 + calibration): PASS");
}

#[test]
fn criterion_03_bessel_envelope() {
    for x in [2u64, 5, 10, 20, 50, 100, 300, 1000] {
        let prec = default_precision(x * x) + 64;
        let xb = Ball::from_u64(x, prec);
        let series = bessel::i_series(13, &xb).unwrap();
        for n in 1..=15u32 {
            let asym = bessel::i13_asymptotic(&xb, n).unwrap();
            assert!(
                asym.contains_ball(&series),
                "series value escapes the envelope at x = {x}, N = {n}"
            );
        }
    }
    println!("criterion 3 (Bessel envelope, x grid x N in 1..=15): PASS");
}

#[test]
fn criterion_04_theorem_containment() {
    let t = table();
    assert_eq!(expansion::cutoff_n(1).unwrap(), 138);
    assert_eq!(expansion::cutoff_n(9).unwrap(), 141);
    let prec = default_precision(5000) + 64;
    for order in 1..=9u32 {
        let ev = AsymptoticEvaluator::new(order, prec).unwrap();
        for n in ev.n_cutoff..=5000 {
            let cv = ev.eval(n).unwrap();
            assert!(
                cv.contains_integer(t.get(n).unwrap()),
                "containment fails at n = {n}, N = {order}"
            );
        }
        for n in [10_000u64, 20_000] {
            let ev_hi = AsymptoticEvaluator::new(order, default_precision(n) + 64).unwrap();
            let cv = ev_hi.eval(n).unwrap();
            assert!(
                cv.contains_integer(t.get(n).unwrap()),
                "containment fails at n = {n}, N = {order}"
            );
        }
    }
    println!("criterion 4 (asymptotic containment, N in 1..=9, n(N)..=5000 and 10^4, 2*10^4): PASS");
}

#[test]
fn criterion_05_coefficient_oracle_equality() {
    assert_eq!(expansion_coeff(0), PiLaurent::one());
    let b1 = &PiLaurent::from_term(1, Rational::from(-2))
        + &PiLaurent::from_term(-1, Rational::from((-675, 32)));
    assert_eq!(expansion_coeff(1), b1);
    let oracle = series_oracle(24, 0).unwrap();
    for m in 0..=24u32 {
        assert_eq!(
            *oracle.coeff(m),
            expansion_coeff(m),
            "closed-form and formal-series coefficients differ at m = {m}"
        );
    }
    println!("criterion 5 (coefficient oracle equality, m <= 24, exact): PASS");
}

#[test]
fn criterion_06a_laguerre_symbolic_leading() {
    for m in 2..=8u32 {
        let rep = corollary_symbolic_check(CorollaryTarget::Laguerre(m), 12).unwrap();
        assert!(rep.vanishing_verified, "order {m}: lower coefficients do not vanish");
        let expect = PiLaurent::from_term(
            m as i64,
            Rational::from(Integer::from(1) << m)
                * Rational::from(invdelta_core::numerics::odd_double_factorial(m))
                / Rational::from(2),
        );
        assert_eq!(rep.leading, expect, "Laguerre({m}) leading coefficient");
        assert!(rep.matches);
    }
    println!("criterion 6a (Laguerre m in 2..=8 leading = (2 pi)^m (2m-1)!!/2, exact): PASS");
}

/// The printed subleading constant of the order-3 Turan expansion.
///
/// The computed exact value is `-pi^2 (1683 + 64 pi^2) / 4`; the printed
/// value `-pi^2 (1683 + 64 pi^2)` fails the bounded-residual test against
/// exact `p24` data (the scaled residual grows like sqrt(n)), while the
/// computed value keeps it bounded and two independent symbolic routes
/// agree on it. The criterion is asserted as stated and fails honestly.
#[test]
fn criterion_06b_turan3_symbolic() {
    let rep = corollary_symbolic_check(CorollaryTarget::Turan3, 12).unwrap();
    assert!(rep.vanishing_verified, "coefficients below z^9 must vanish");
    assert_eq!(
        rep.leading,
        PiLaurent::from_term(3, Rational::from(4)),
        "Turan-3 leading coefficient"
    );
    let printed = &PiLaurent::from_term(2, Rational::from(-1683))
        + &PiLaurent::from_term(4, Rational::from(-64));
    let got = rep.subleading.clone().unwrap();
    let verdict = if got == printed { "PASS" } else { "FAIL" };
    println!("criterion 6b (Turan-3 leading 4 pi^3: PASS; subleading = -pi^2(1683+64 pi^2): {verdict})");
    assert_eq!(
        got, printed,
        "computed exact subleading is {got}; the printed constant does not \
         satisfy the bounded-residual test against exact p24 data"
    );
}

/// Same situation as the Turan-3 subleading: the computed exact value is
/// `-843/4 pi^2 + 16 pi^4`, not the printed `-pi^2 (843 + 64 pi^2)`.
#[test]
fn criterion_06c_logconcave2_symbolic() {
    let rep = corollary_symbolic_check(CorollaryTarget::LogConcave2, 12).unwrap();
    assert!(rep.vanishing_verified, "coefficients below z^9 must vanish");
    assert_eq!(
        rep.leading,
        PiLaurent::from_term(3, Rational::from(2)),
        "2-log-concavity leading coefficient"
    );
    let printed = &PiLaurent::from_term(2, Rational::from(-843))
        + &PiLaurent::from_term(4, Rational::from(-64));
    let got = rep.subleading.clone().unwrap();
    let verdict = if got == printed { "PASS" } else { "FAIL" };
    println!("criterion 6c (2-log-concavity leading 2 pi^3: PASS; subleading = -pi^2(843+64 pi^2): {verdict})");
    assert_eq!(
        got, printed,
        "computed exact subleading is {got}; the printed constant does not \
         satisfy the bounded-residual test against exact p24 data"
    );
}

#[test]
fn criterion_07_signed_binomial_identity() {
    for m in 0u32..=30 {
        for r in 0..=(2 * m).saturating_sub(1).min(2 * m) {
            if r == 0 && m == 0 {
                assert!(expansion::signed_binomial_identity_holds(0, 0).unwrap());
                continue;
            }
            if r < 2 * m {
                assert!(
                    expansion::signed_binomial_identity_holds(r, m).unwrap(),
                    "identity fails at r = {r}, m = {m}"
                );
            }
        }
    }
    println!("criterion 7 (signed binomial identity, r < 2m <= 60, exact): PASS");
}

#[test]
fn criterion_08_coefficient_bound_suite() {
    let prec = 512;
    let pi = pi_ball(prec);
    let four_pi = pi.mul(&Ball::from_u64(4, prec));
    let cosh = four_pi.cosh();
    let two_sqrt_pi = Ball::from_u64(2, prec).mul(&pi.sqrt());
    let set = ExpansionCoeffSet::new(20);
    let b_hat_const = pi
        .mul(&Ball::from_u64(2, prec))
        .add(&Ball::from_u64(8, prec).mul(&pi.sqrt()).mul(&cosh).div_u64(23));
    for m in 1..=20u32 {
        // |T_m| <= 2 sqrt(pi) cosh(4 pi) / m^(3/2)
        let t_abs = set.t[m as usize].eval(&pi).abs();
        let t_bound = two_sqrt_pi
            .mul(&cosh)
            .div(&Ball::from_u64(m as u64, prec).pow_rational(&Rational::from((3, 2))));
        assert!(t_abs.certified_lt(&t_bound), "|T_{m}| bound fails");
        // |A_m(27/4)| <= (27/4)^(m/2), exact rational for even m
        let a_abs = set.a_hat[m as usize].clone().abs();
        if m % 2 == 0 {
            assert!(a_abs <= Rational::from((27, 4)).pow((m / 2) as i32));
        } else {
            assert_eq!(a_abs, 0);
        }
        // |Bhat_m| <= (27/4)^(m/2) (2 pi + 8 sqrt(pi) cosh(4 pi) / 23)
        let b_abs = set.b_hat[m as usize].eval(&pi).abs();
        let growth = Ball::from_rational(&Rational::from((27, 4)), prec)
            .pow_rational(&Rational::from((m as i64, 2)));
        let b_bound = growth.mul(&b_hat_const);
        assert!(b_abs.certified_lt(&b_bound), "|Bhat_{m}| bound fails");
        // |C_m| <= 8 m! 69^(m/2)
        let c_abs = set.c[m as usize].eval(&pi).abs();
        let c_bound = Ball::from_u64(8, prec)
            .mul(&Ball::from_integer(&factorial(m), prec))
            .mul(&Ball::from_u64(69, prec).pow_rational(&Rational::from((m as i64, 2))));
        assert!(c_abs.certified_lt(&c_bound), "|C_{m}| bound fails");
    }
    println!("criterion 8 (printed coefficient bounds for T, A, Bhat, C up to index 20): PASS");
}

#[test]
fn criterion_09_sharpness_and_scan_reports() {
    let t = table();
    // Empirical sharpness at n = 2 * 10^4 for N <= 5: the scaled residual
    // against |Btilde_{N+1}| lies in [0.8, 1.2].
    let n = 20_000u64;
    let prec = default_precision(n) + 256;
    let pi = pi_ball(prec);
    let set = ExpansionCoeffSet::new(6);
    let nb = Ball::from_u64(n, prec);
    let scaled_p24 = Ball::from_u64(2, prec)
        .sqrt()
        .mul(&nb.pow_rational(&Rational::from((27, 4))))
        .div(&pi.mul(&Ball::from_u64(4, prec)).mul(&nb.sqrt()).exp())
        .mul(&Ball::from_integer(t.get(n).unwrap(), prec));
    let inv_sqrt = nb.sqrt().recip();
    for order in 1..=5u32 {
        let mut partial = Ball::zero(prec);
        for m in (0..=order).rev() {
            partial = partial.mul(&inv_sqrt).add(&set.b_tilde[m as usize].eval(&pi));
        }
        let residual = scaled_p24.sub(&partial).abs();
        let ratio = residual
            .mul(&nb.pow_rational(&Rational::from((order as i64 + 1, 2))))
            .div(&set.b_tilde[(order + 1) as usize].eval(&pi).abs());
        let lo = Ball::from_rational(&Rational::from((8, 10)), prec);
        let hi = Ball::from_rational(&Rational::from((12, 10)), prec);
        assert!(
            lo.certified_lt(&ratio) && ratio.certified_lt(&hi),
            "sharpness ratio out of [0.8, 1.2] at N = {order}: {ratio}"
        );
    }

    // Scan reports over [1, 2 * 10^4] with frozen expected violation sets:
    // every operator scan comes back clean (no violations, no zeros) on the
    // first verified run, so the frozen sets are empty.
    let ops: Vec<(ScanOp, u64)> = vec![
        (ScanOp::RLogConcave(1), 0),
        (ScanOp::RLogConcave(2), 0),
        (ScanOp::Turan3, 1),
        (ScanOp::Laguerre(2), 0),
        (ScanOp::Laguerre(3), 0),
        (ScanOp::Laguerre(4), 0),
        (ScanOp::Laguerre(5), 0),
        (ScanOp::Laguerre(6), 0),
        (ScanOp::Laguerre(7), 0),
        (ScanOp::Laguerre(8), 0),
    ];
    for (op, lo) in ops {
        let rep = scan(t, op, lo, 20_000).unwrap();
        assert!(
            rep.violations.is_empty(),
            "{}: expected frozen-empty violation set, got {:?}",
            rep.operator,
            rep.violations
        );
        assert!(rep.zeros.is_empty(), "{}: unexpected exact zeros", rep.operator);
        assert_eq!(rep.all_hold_from, Some(lo));
    }
    println!("criterion 9 (sharpness in [0.8, 1.2] at 2*10^4 for N <= 5; scan reports clean over [1, 2*10^4]): PASS");
}

#[test]
fn criterion_10_conjecture_scan() {
    let t = table();
    let points = [1_000u64, 5_000, 20_000];
    for m in 1..=3u32 {
        let ratios = conjecture_scan(t, m, &points).unwrap();
        assert_eq!(ratios.len(), 3);
        let mut dist_prev = f64::INFINITY;
        for (n, r) in &ratios {
            assert!(r.certified_positive(), "m = {m}, n = {n}: ratio not certified positive");
            let mid = r.midpoint().to_f64();
            let dist = (mid - 1.0).abs();
            println!("  conjecture m={m} n={n}: ratio = {mid:.6}");
            assert!(
                dist < dist_prev,
                "m = {m}: |ratio - 1| did not shrink from one point to the next"
            );
            dist_prev = dist;
        }
    }
    println!("criterion 10 (conjectured Laguerre growth: ratios computed, monotone trend toward 1): PASS");
}

// ---- heavier module invariants sharing the same table -----------------------

#[test]
fn invariant_remainder_bound_chain() {
    // |p24(n) - M(n)| <= R_bound(n) for all 2 <= n <= 2000.
    let t = table();
    for n in 2..=2000u64 {
        let prec = default_precision(n) + 64;
        let x = pi_ball(prec)
            .mul(&Ball::from_u64(4, prec))
            .mul(&Ball::from_u64(n - 1, prec).sqrt());
        let main = pi_ball(prec)
            .mul(&Ball::from_u64(2, prec))
            .mul(&Ball::from_u64(n - 1, prec).pow_rational(&Rational::from((-13, 2))))
            .mul(&bessel::i_series(13, &x).unwrap());
        let residual = Ball::from_integer(t.get(n).unwrap(), prec).sub(&main).abs();
        let bound = rademacher::r_bound(n, prec).unwrap();
        assert!(
            residual.certified_lt(&bound),
            "remainder bound chain fails at n = {n}"
        );
    }
    println!("invariant (remainder bound chain, 2 <= n <= 2000): PASS");
}

#[test]
fn invariant_g_ratio_decay_grid() {
    // G(n) <= n^(-(N+1)/2) at n = n(N) and 4 n(N) for N in 1..=9.
    for order in 1..=9u32 {
        let cutoff = expansion::cutoff_n(order).unwrap();
        for n in [cutoff, 4 * cutoff] {
            let g = rademacher::g_ratio(n, Some(default_precision(n) + 64)).unwrap();
            let target = Ball::from_u64(n, default_precision(n) + 64)
                .pow_rational(&Rational::from((-(order as i64) - 1, 2)));
            assert!(
                g.certified_lt(&target) || g.certified_le(&target),
                "G({n}) > n^-({order}+1)/2"
            );
        }
    }
    println!("invariant (G-ratio decay on the cutoff grid): PASS");
}

#[test]
fn invariant_digit_count_sanity() {
    // log10 p24(n) / (4 pi sqrt(n) / ln 10) -> 1; deviation < 5% at n = 10^4.
    let t = table();
    let n = 10_000u64;
    let v = t.get(n).unwrap();
    let log10_v = Ball::from_integer(v, 256).ln().div(&Ball::from_u64(10, 256).ln());
    let growth = pi_ball(256)
        .mul(&Ball::from_u64(4, 256))
        .mul(&Ball::from_u64(n, 256).sqrt())
        .div(&Ball::from_u64(10, 256).ln());
    let ratio = log10_v.div(&growth).midpoint().to_f64();
    assert!(
        (ratio - 1.0).abs() < 0.05,
        "digit-count ratio {ratio} deviates by 5% or more"
    );
    println!("invariant (digit-count sanity at n = 10^4): PASS");
}

#[test]
fn invariant_bessel_tail_bound_random_pairs() {
    // 20 pseudo-random (y, K): explicit partial sums stay below the bound.
    let mut state = 0x6a09e667f3bcc908u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..20 {
        let y_int = next() % 400 + 5;
        let big_k = (next() % 30 + 1) as u32;
        let prec = default_precision(y_int * y_int / 16) + 64;
        let y = Ball::from_u64(y_int, prec);
        let bound = bessel::tail_sum_bound(&y, big_k).unwrap();
        let mut partial = Ball::zero(prec);
        for k in (big_k + 1)..=(big_k + 200) {
            partial = partial.add(&bessel::i_series(13, &y.div_u64(k as u64)).unwrap());
        }
        assert!(
            partial.certified_lt(&bound) || partial.certified_le(&bound),
            "partial tail sum exceeds bound at y = {y_int}, K = {big_k}"
        );
    }
    println!("invariant (Bessel tail bound on 20 random pairs): PASS");
}

#[test]
fn invariant_shifted_series_numeric() {
    // The shifted formal series approximates the scaled exact values to the
    // expected order: truncating at z^6 leaves an O(n^(-7/2)) residual.
    let t = table();
    let n = 10_000u64;
    let prec = default_precision(n) + 320;
    let pi = pi_ball(prec);
    let nb = Ball::from_u64(n, prec);
    let scale = Ball::from_u64(2, prec)
        .sqrt()
        .mul(&nb.pow_rational(&Rational::from((27, 4))))
        .div(&pi.mul(&Ball::from_u64(4, prec)).mul(&nb.sqrt()).exp());
    for (s, residual_cap) in [(1i64, 200u64), (2, 500), (-1, 2_000_000)] {
        let f = series_oracle(6, s).unwrap();
        let approx = f.eval_at(n, prec);
        let exact = scale.mul(&Ball::from_integer(
            t.get((n as i64 + s) as u64).unwrap(),
            prec,
        ));
        let scaled_residual = exact
            .sub(&approx)
            .abs()
            .mul(&nb.pow_rational(&Rational::from((7, 2))));
        let cap = Ball::from_u64(residual_cap, prec);
        assert!(
            scaled_residual.certified_lt(&cap),
            "shift {s}: scaled residual exceeds {residual_cap}"
        );
    }
    println!("invariant (shifted-series numeric cross-check at n = 10^4): PASS");
}

#[test]
fn invariant_turan3_numeric_corroboration() {
    // turan3(n) n^(9/2) / (pref(n)^4 4 pi^3) drifts toward 1 from 10^4 to
    // 2*10^4 and lies within [0.3, 1.7] at 2*10^4 (the subleading term of
    // the combination is large, ~2315/(4 pi sqrt n) relative to leading).
    let t = table();
    let mut prev_dist = f64::INFINITY;
    let mut last_mid = 0.0;
    for n in [10_000u64, 20_000] {
        let prec = 4 * default_precision(n) + 256;
        let pi = pi_ball(prec);
        let nb = Ball::from_u64(n, prec);
        let pref = pi
            .mul(&Ball::from_u64(4, prec))
            .mul(&nb.sqrt())
            .exp()
            .div(&Ball::from_u64(2, prec).sqrt().mul(&nb.pow_rational(&Rational::from((27, 4)))));
        let tv = invdelta_core::inequalities::turan3_value(t, n).unwrap();
        let ratio = Ball::from_integer(&tv, prec)
            .mul(&nb.pow_rational(&Rational::from((9, 2))))
            .div(&pref.pow_i64(4).mul(&pi.pow_i64(3)).mul(&Ball::from_u64(4, prec)));
        let mid = ratio.midpoint().to_f64();
        assert!((mid - 1.0).abs() < prev_dist, "no drift toward 1 at n = {n}");
        prev_dist = (mid - 1.0).abs();
        last_mid = mid;
    }
    assert!(
        (0.3..1.7).contains(&last_mid),
        "ratio {last_mid} at 2*10^4 outside [0.3, 1.7]"
    );
    println!("invariant (Turan-3 numeric corroboration, ratio drift toward 1): PASS");
}

#[test]
fn invariant_main_term_ratio_trend() {
    // The general-alpha main term approaches the exact sequence from above;
    // the computed deviation at n = 10^4 is ~7% and shrinks to ~5% at
    // 2 * 10^4 (the n^(-1/2) correction carries coefficient ~6.71).
    let t = table();
    let alpha = Rational::from(24);
    let mut prev = f64::INFINITY;
    for n in [10_000u64, 20_000] {
        let v = expansion::main_term_general(&alpha, n, None).unwrap();
        let ratio = v
            .div(&Ball::from_integer(t.get(n).unwrap(), v.precision()))
            .midpoint()
            .to_f64();
        assert!((1.0..1.10).contains(&ratio), "ratio {ratio} out of band at n = {n}");
        assert!(ratio - 1.0 < prev, "deviation did not shrink at n = {n}");
        prev = ratio - 1.0;
    }
    println!("invariant (general-alpha main term ratio trend): PASS");
}
