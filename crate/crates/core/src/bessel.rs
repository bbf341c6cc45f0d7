//! Modified Bessel function of the first kind, integer order: exact-series
//! evaluation and the order-13 asymptotic expansion with its explicit error
//! envelope.
//!
//! The envelope constant `E(13, N)` and the expansion coefficients
//! `a_m(13)` certify, for every `x > 1`,
//! `|sqrt(2 pi x) e^-x I13(x) - sum_{m<=N} (-1)^m a_m(13) x^-m|
//!  < E(13,N) |a_{N+1}(13)| x^-(N+1)`.
//! Only order 13 carries this certificate; other orders get series
//! evaluation only.

use crate::error::{Error, Result};
use crate::numerics::{
    factorial, general_binomial, pi_ball, rising_factorial, Ball, CertifiedValue, ExactRational,
};
use rug::{Integer, Rational};

/// Exact expansion coefficient `a_m(13) = binom(25/2, m) (27/2)_m / 2^m`.
pub fn asymptotic_coeff(m: u32) -> ExactRational {
    let b = Rational::from((25, 2));
    let r = Rational::from((27, 2));
    let mut out = general_binomial(&b, m) * rising_factorial(&r, m);
    out /= Rational::from(Integer::from(1) << m);
    out
}

/// Series evaluation of `I_nu(x)` for `x > 0`, truncated when the next term
/// drops below the radius target past the term peak, with a rigorous
/// geometric tail majorant folded into the radius.
pub fn i_series(nu: u32, x: &Ball) -> Result<Ball> {
    if !x.is_finite() || !x.certified_positive() {
        return Err(Error::Domain(format!(
            "I_{nu} series requires certified x > 0, got {x}"
        )));
    }
    let prec = x.precision();
    let half = x.div_u64(2);
    let half_sq = half.square();
    // t_0 = (x/2)^nu / nu!
    let mut term = half
        .pow_i64(nu as i64)
        .div(&Ball::from_integer(&factorial(nu), prec));
    let mut sum = term.clone();
    let x_hi = x.upper().to_f64();
    let m_limit = (x_hi / 2.0) as u64 + 4 * prec as u64 + 64;
    // 2^-(prec+8)
    let cutoff = Ball::from_u64(1, 64).div(&Ball::from_integer(
        &(Integer::from(1) << (prec + 8)),
        64,
    ));
    let mut m: u64 = 0;
    loop {
        // next term: t_{m+1} = t_m (x/2)^2 / ((m+1)(m+nu+1))
        let denom = Ball::from_u64(m + 1, prec).mul(&Ball::from_u64(m + 1 + nu as u64, prec));
        term = term.mul(&half_sq).div(&denom);
        m += 1;
        let past_peak = (m as f64) > x_hi / 2.0;
        let small = term
            .upper()
            .partial_cmp(&(cutoff.lower() * sum.lower()))
            .is_some_and(|o| o.is_lt());
        if past_peak && small {
            // Tail <= t_m * r / (1 - r) with r the next-step ratio, which is
            // decreasing in m; r < 1 is implied by m > x/2.
            let r_num = half_sq.upper();
            let r_den = (m + 1) * (m + 1 + nu as u64);
            let r = Ball::from_endpoints(&r_num, &r_num, prec).div_u64(r_den);
            if !r.is_finite() || r.upper() >= 1 {
                return Err(Error::PrecisionInsufficient(
                    "tail ratio not certified below 1".into(),
                ));
            }
            let tail = term.mul(&r).div(&Ball::one(prec).sub(&r));
            let zero = rug::Float::with_val(prec, 0);
            let tail_hi = tail.upper();
            sum = sum.add(&term).add(&Ball::from_endpoints(&zero, &tail_hi, prec));
            return Ok(sum);
        }
        sum = sum.add(&term);
        if m > m_limit {
            return Err(Error::PrecisionInsufficient(format!(
                "I_{nu}({x}) series did not meet the radius target within {m_limit} terms"
            )));
        }
    }
}

/// The explicit envelope constant `E(13, N)`, by the printed three-case
/// formula (branch selected exactly by `N`, natural logarithm).
pub fn envelope(n_terms: u32, prec: u32) -> Ball {
    assert!(n_terms >= 1, "envelope requires N >= 1");
    let one = Ball::one(prec);
    let pi = pi_ball(prec);
    let n = n_terms as i64;
    if n_terms <= 11 {
        // 1 + sqrt(2/pi^3) sqrt(14/(12-N)) sqrt(N+29/2) (sqrt(1/(13-N)) - sqrt(1/14))
        let a = Ball::from_u64(2, prec).div(&pi.pow_i64(3)).sqrt();
        let b = Ball::from_rational(&Rational::from((14, 12 - n)), prec).sqrt();
        let c = Ball::from_rational(&(Rational::from(n) + Rational::from((29, 2))), prec).sqrt();
        let d = Ball::from_rational(&Rational::from((1, 13 - n)), prec)
            .sqrt()
            .sub(&Ball::from_rational(&Rational::from((1, 14)), prec).sqrt());
        one.add(&a.mul(&b).mul(&c).mul(&d))
    } else if n_terms == 12 {
        // 1 + (sqrt(29)/pi)(sqrt(14) - 1)
        let s29 = Ball::from_u64(29, prec).sqrt();
        let s14 = Ball::from_u64(14, prec).sqrt();
        one.add(&s29.div(&pi).mul(&s14.sub(&one)))
    } else {
        // 1 + (2 sqrt(pi) + 405)/(2 sqrt(pi)) sqrt(2N+29)
        //   + sqrt(2N+29) log(N+1)/(2 sqrt(pi))
        //   + 405 sqrt(2N+29) log(N+1)/(2 sqrt(pi) (N+2))
        let two_sqrt_pi = Ball::from_u64(2, prec).mul(&pi.sqrt());
        let root = Ball::from_i64(2 * n + 29, prec).sqrt();
        let log_np1 = Ball::from_i64(n + 1, prec).ln();
        let c405 = Ball::from_u64(405, prec);
        let t1 = two_sqrt_pi.add(&c405).div(&two_sqrt_pi).mul(&root);
        let t2 = root.mul(&log_np1).div(&two_sqrt_pi);
        let t3 = c405
            .mul(&root)
            .mul(&log_np1)
            .div(&two_sqrt_pi.mul(&Ball::from_i64(n + 2, prec)));
        one.add(&t1).add(&t2).add(&t3)
    }
}

/// Truncated asymptotic evaluation of `I13(x)` for `x > 1`:
/// `value = e^x/sqrt(2 pi x) * sum_{m<=N} (-1)^m a_m(13) x^-m` and
/// `bound = e^x/sqrt(2 pi x) * E(13,N) |a_{N+1}(13)| x^-(N+1)`, with the
/// guarantee `I13(x)` in `value +/- bound`.
pub fn i13_asymptotic(x: &Ball, n_terms: u32) -> Result<CertifiedValue> {
    if !x.is_finite() || x.lower() <= 1 {
        return Err(Error::Domain(
            "asymptotic expansion of I13 requires certified x > 1".into(),
        ));
    }
    assert!(n_terms >= 1, "expansion order must be >= 1");
    let prec = x.precision();
    let inv = x.recip();
    // Horner over m = N..0 in 1/x with alternating exact coefficients.
    let mut s = Ball::zero(prec);
    for m in (0..=n_terms).rev() {
        let mut c = asymptotic_coeff(m);
        if m % 2 == 1 {
            c = -c;
        }
        s = s.mul(&inv).add(&Ball::from_rational(&c, prec));
    }
    let pref = x
        .exp()
        .div(&Ball::from_u64(2, prec).mul(&pi_ball(prec)).mul(x).sqrt());
    let value = pref.mul(&s);
    let a_next = asymptotic_coeff(n_terms + 1).abs();
    let bound = pref
        .mul(&envelope(n_terms, prec))
        .mul(&Ball::from_rational(&a_next, prec))
        .mul(&inv.pow_i64(n_terms as i64 + 1));
    Ok(CertifiedValue { value, bound })
}

/// Upper bound on the Bessel tail `sum_{k >= K+1} I13(y/k)` by
/// `(2 K^2 / y) I12(y/K)`, from the monotone integral comparison.
pub fn tail_sum_bound(y: &Ball, big_k: u32) -> Result<Ball> {
    if !y.certified_positive() {
        return Err(Error::Domain("tail bound requires certified y > 0".into()));
    }
    assert!(big_k >= 1);
    let prec = y.precision();
    let i12 = i_series(12, &y.div_u64(big_k as u64))?;
    let k_sq = Ball::from_u64(big_k as u64, prec).square();
    Ok(Ball::from_u64(2, prec).mul(&k_sq).div(y).mul(&i12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::default_precision;
    use rug::ops::Pow;

    fn ball_u(v: u64, prec: u32) -> Ball {
        Ball::from_u64(v, prec)
    }

    #[test]
    fn coeff_first_values() {
        assert_eq!(asymptotic_coeff(0), 1);
        assert_eq!(asymptotic_coeff(1), Rational::from((675, 8)));
        assert_eq!(asymptotic_coeff(2), Rational::from((450225, 128)));
    }

    #[test]
    fn coeff_growth_bound() {
        // |a_k(13)| <= (27/(2 sqrt 2))^(2k) k! = (729/8)^k k!, exactly.
        for k in 0..=40u32 {
            let lhs = asymptotic_coeff(k).abs();
            let rhs = Rational::from((729, 8)).pow(k as i32) * Rational::from(factorial(k));
            assert!(lhs <= rhs, "bound fails at k = {k}");
        }
    }

    #[test]
    fn series_small_argument_leading_term() {
        let prec = 128;
        let x = Ball::from_rational(&Rational::from((1, 1000)), prec);
        let v = i_series(13, &x).unwrap();
        // leading term (x/2)^13 / 13! dominates utterly
        let lead = x
            .div_u64(2)
            .pow_i64(13)
            .div(&Ball::from_integer(&factorial(13), prec));
        assert!(v.certified_positive());
        assert!(v.upper() < lead.upper() * 1.000001f64);
        assert!(v.lower() > lead.lower() * 0.999999f64);
    }

    #[test]
    fn series_monotone_in_order() {
        let x = ball_u(10, 128);
        let i11 = i_series(11, &x).unwrap();
        let i12 = i_series(12, &x).unwrap();
        let i13 = i_series(13, &x).unwrap();
        assert!(i12.certified_lt(&i11));
        assert!(i13.certified_lt(&i12));
    }

    #[test]
    fn envelope_examples() {
        let prec = 128;
        let e1 = envelope(1, prec);
        // ~1.0241..., certified below 2
        assert!(e1.lower() > 1.024);
        assert!(e1.upper() < 1.025);
        assert!(e1.certified_lt(&ball_u(2, prec)));
        // N = 12 closed form: 1 + sqrt(29)/pi (sqrt 14 - 1)
        let e12 = envelope(12, prec);
        let expect = 1.0 + 29f64.sqrt() / std::f64::consts::PI * (14f64.sqrt() - 1.0);
        assert!((e12.midpoint().to_f64() - expect).abs() < 1e-12);
        // branch N >= 13 evaluates
        assert!(envelope(13, prec).certified_positive());
        assert!(envelope(20, prec).certified_positive());
    }

    #[test]
    fn asymptotic_encloses_series_spotchecks() {
        for (x, n) in [(2u64, 1u32), (5, 2), (100, 3), (300, 8)] {
            let prec = default_precision(x * x);
            let xb = ball_u(x, prec);
            let series = i_series(13, &xb).unwrap();
            let asym = i13_asymptotic(&xb, n).unwrap();
            assert!(
                asym.contains_ball(&series),
                "x = {x}, N = {n}: series not inside envelope"
            );
        }
    }

    #[test]
    fn asymptotic_bound_shrinks_with_order() {
        let prec = 512;
        let xb = ball_u(500, prec);
        let b1 = i13_asymptotic(&xb, 1).unwrap().bound;
        let b2 = i13_asymptotic(&xb, 2).unwrap().bound;
        assert!(b2.certified_lt(&b1));
    }

    #[test]
    fn asymptotic_domain_error() {
        let xb = Ball::from_rational(&Rational::from((1, 2)), 64);
        assert!(matches!(i13_asymptotic(&xb, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn tail_bound_dominates_partial_sums() {
        // Direct partial-sum comparison at a moderate argument.
        let prec = 256;
        let y = ball_u(60, prec);
        for big_k in [2u32, 5, 10] {
            let bound = tail_sum_bound(&y, big_k).unwrap();
            let mut partial = Ball::zero(prec);
            for k in (big_k + 1)..(big_k + 120) {
                partial = partial.add(&i_series(13, &y.div_u64(k as u64)).unwrap());
            }
            assert!(
                partial.certified_lt(&bound) || partial.certified_le(&bound),
                "partial sum exceeds tail bound at K = {big_k}"
            );
        }
    }
}
