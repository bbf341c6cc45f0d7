//! Truncated asymptotic expansion of `p24(n)`: exact coefficients, explicit
//! error constants, the validity cutoff `n(N)`, certified evaluation, and an
//! independent formal-power-series oracle.
//!
//! Every expansion coefficient is an exact rational Laurent polynomial in pi
//! ([`PiLaurent`]); only final evaluation touches ball arithmetic, so the
//! symbolic corollary checks downstream can demand exact equality.

mod series;

pub use series::{shifted_main_series, FormalSeries};

use crate::bessel;
use crate::error::{Error, Result};
use crate::numerics::{
    default_precision, factorial, general_binomial, integer_binomial, pi_ball, rising_factorial,
    Ball, CertifiedValue, ExactRational, PiLaurent,
};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Even Taylor coefficients of the exponential factor
/// `exp(4 pi (sqrt(n-1) - sqrt(n)))`: polynomial of degree `k` in `pi^2`.
pub fn exp_taylor_even(k: u32) -> PiLaurent {
    if k == 0 {
        return PiLaurent::one();
    }
    // (-1)^k (1/2 - k)_{k+1} / k * sum_{l=1..k} (-1)^l (-k)_l / (k+l)! * (4 pi)^(2l) / (2l-1)!
    let half_minus_k = Rational::from((1i64 - 2 * k as i64, 2));
    let mut front = rising_factorial(&half_minus_k, k + 1) / Rational::from(k);
    if k % 2 == 1 {
        front = -front;
    }
    let mut out = PiLaurent::zero();
    for l in 1..=k {
        let mut c = rising_factorial(&Rational::from(-(k as i64)), l);
        if l % 2 == 1 {
            c = -c;
        }
        c /= Rational::from(factorial(k + l));
        c *= Rational::from(Integer::from(4).pow(2 * l));
        c /= Rational::from(factorial(2 * l - 1));
        out = &out + &PiLaurent::from_term(2 * l as i64, front.clone() * c);
    }
    out
}

/// Odd Taylor coefficients of the exponential factor: odd polynomial of
/// degree `2k+1` in pi.
pub fn exp_taylor_odd(k: u32) -> PiLaurent {
    // (-1)^(k+1) (1/2 - k)_{k+1} sum_{l=0..k} (-1)^l (-k)_l / (l+k+1)! * (4 pi)^(2l+1) / (2l)!
    let half_minus_k = Rational::from((1i64 - 2 * k as i64, 2));
    let mut front = rising_factorial(&half_minus_k, k + 1);
    if k % 2 == 0 {
        front = -front;
    }
    let mut out = PiLaurent::zero();
    for l in 0..=k {
        let mut c = rising_factorial(&Rational::from(-(k as i64)), l);
        if l % 2 == 1 {
            c = -c;
        }
        c /= Rational::from(factorial(l + k + 1));
        c *= Rational::from(Integer::from(4).pow(2 * l + 1));
        c /= Rational::from(factorial(2 * l));
        out = &out + &PiLaurent::from_term(2 * l as i64 + 1, front.clone() * c);
    }
    out
}

/// Full Taylor coefficient `T_k` of the exponential factor, by parity.
pub fn exp_taylor_coeff(k: u32) -> PiLaurent {
    if k % 2 == 0 {
        exp_taylor_even(k / 2)
    } else {
        exp_taylor_odd(k / 2)
    }
}

/// Taylor coefficients of the binomial factor `(1 - 1/n)^(-alpha)` in
/// `n^(-1/2)`: zero for odd index, `(-1)^(m/2) binom(-alpha, m/2)` for even.
pub fn binomial_factor_coeff(alpha: &Rational, m: u32) -> ExactRational {
    if m % 2 == 1 {
        return Rational::new();
    }
    let mut c = general_binomial(&(-alpha.clone()), m / 2);
    if (m / 2) % 2 == 1 {
        c = -c;
    }
    c
}

fn alpha_27_4() -> Rational {
    Rational::from((27, 4))
}

/// Coefficients of the product of the exponential and binomial factors
/// (`Bhat` family): convolution by parity with `A_m := A_m(27/4)`.
pub fn prefactor_coeff(m: u32) -> PiLaurent {
    let alpha = alpha_27_4();
    let mut out = PiLaurent::zero();
    if m % 2 == 0 {
        let t = m / 2;
        for l in 0..=t {
            let a = binomial_factor_coeff(&alpha, 2 * t - 2 * l);
            out = &out + &exp_taylor_even(l).scale(&a);
        }
    } else {
        let t = (m - 1) / 2;
        for l in 0..=t {
            let a = binomial_factor_coeff(&alpha, 2 * t - 2 * l);
            out = &out + &exp_taylor_odd(l).scale(&a);
        }
    }
    out
}

/// Coefficients of the recentered Bessel sum (`C` family): Laurent
/// polynomials with nonpositive pi-exponents.
pub fn bessel_factor_coeff(m: u32) -> PiLaurent {
    let mut out = PiLaurent::zero();
    if m % 2 == 0 {
        let t = m / 2;
        // (-1)^t sum_{k<=t} binom(-k, t-k) (-1)^k a_2k(13) / (4 pi)^(2k)
        for k in 0..=t {
            let mut c = integer_binomial(-(k as i64), (t - k) as i64);
            c *= bessel::asymptotic_coeff(2 * k);
            c /= Rational::from(Integer::from(16).pow(k));
            if (t + k) % 2 == 1 {
                c = -c;
            }
            out = &out + &PiLaurent::from_term(-2 * (k as i64), c);
        }
    } else {
        let t = (m - 1) / 2;
        // (-1)^(t+1) sum_{k<=t} binom(-(2k+1)/2, t-k) (-1)^k a_{2k+1}(13) / (4 pi)^(2k+1)
        for k in 0..=t {
            let top = Rational::from((-(2 * k as i64) - 1, 2));
            let mut c = general_binomial(&top, t - k);
            c *= bessel::asymptotic_coeff(2 * k + 1);
            c /= Rational::from(Integer::from(4).pow(2 * k + 1));
            if (t + 1 + k) % 2 == 1 {
                c = -c;
            }
            out = &out + &PiLaurent::from_term(-(2 * k as i64) - 1, c);
        }
    }
    out
}

/// Final expansion coefficients (`Btilde` family): convolution of the
/// prefactor and Bessel-factor families.
pub fn expansion_coeff(m: u32) -> PiLaurent {
    let mut out = PiLaurent::zero();
    for k in 0..=m {
        out = &out + &(&prefactor_coeff(k) * &bessel_factor_coeff(m - k));
    }
    out
}

/// All coefficient families through order `N`, computed once and shared.
#[derive(Clone, Debug)]
pub struct ExpansionCoeffSet {
    pub order: u32,
    pub t: Vec<PiLaurent>,
    pub a_hat: Vec<ExactRational>,
    pub b_hat: Vec<PiLaurent>,
    pub c: Vec<PiLaurent>,
    pub b_tilde: Vec<PiLaurent>,
}

impl ExpansionCoeffSet {
    pub fn new(order: u32) -> Self {
        let alpha = alpha_27_4();
        let t = (0..=order).map(exp_taylor_coeff).collect();
        let a_hat = (0..=order)
            .map(|m| binomial_factor_coeff(&alpha, m))
            .collect();
        let b_hat: Vec<PiLaurent> = (0..=order).map(prefactor_coeff).collect();
        let c: Vec<PiLaurent> = (0..=order).map(bessel_factor_coeff).collect();
        let b_tilde = (0..=order)
            .map(|m| {
                let mut out = PiLaurent::zero();
                for k in 0..=m {
                    out = &out + &(&b_hat[k as usize] * &c[(m - k) as usize]);
                }
                out
            })
            .collect();
        ExpansionCoeffSet {
            order,
            t,
            a_hat,
            b_hat,
            c,
            b_tilde,
        }
    }
}

/// Threshold `C*(m)` above which `e^(-y/2) < y^-m`: 1 for `m = 1`, else
/// `6 m log m - m log log m`.
pub fn exp_dominance_threshold(m: u32, prec: u32) -> Ball {
    assert!(m >= 1);
    if m == 1 {
        return Ball::one(prec);
    }
    let mb = Ball::from_u64(m as u64, prec);
    let ln_m = mb.ln();
    let six = Ball::from_u64(6, prec);
    six.mul(&mb).mul(&ln_m).sub(&mb.mul(&ln_m.ln()))
}

/// Validity cutoff `n(N) = max(138, ceil((C*(N+2) / 4 pi)^2 + 1))`, with the
/// ceiling certified by precision refinement.
pub fn cutoff_n(order: u32) -> Result<u64> {
    assert!(order >= 1);
    let mut prec: u32 = 128;
    loop {
        let c = exp_dominance_threshold(order + 2, prec);
        let four_pi = pi_ball(prec).mul(&Ball::from_u64(4, prec));
        let v = c.div(&four_pi).square().add(&Ball::one(prec));
        let lo_ceil = v.lower().ceil();
        let hi_ceil = v.upper().ceil();
        if lo_ceil == hi_ceil {
            let ceil = lo_ceil
                .to_integer()
                .and_then(|i| i.to_u64())
                .ok_or_else(|| Error::Domain("cutoff out of u64 range".into()))?;
            return Ok(ceil.max(138));
        }
        let width = Float::with_val(64, v.upper() - v.lower());
        if width < Float::with_val(64, Float::i_exp(1, -60)) {
            return Err(Error::CeilingAmbiguous(format!(
                "(C*({})/4pi)^2 + 1 is within 2^-60 of an integer",
                order + 2
            )));
        }
        prec *= 2;
        if prec > 1 << 20 {
            return Err(Error::PrecisionInsufficient(
                "certified ceiling did not stabilize".into(),
            ));
        }
    }
}

/// The explicit error constants of the truncated expansion at order `N`.
#[derive(Clone, Debug)]
pub struct ErrorConstants {
    pub order: u32,
    /// Exponential-factor truncation constant `2 sqrt(2 pi) cosh(4 pi)`.
    pub e2: Ball,
    /// Binomial-factor truncation constant `2 (27/4)^((N+1)/2)`.
    pub e3: Ball,
    /// Combined prefactor constant `3 E2 E3 N`.
    pub e4: Ball,
    /// Bessel-envelope constant `2 E(13,N) |a_{N+1}(13)| / (4 pi)^(N+1)`.
    pub e_n1: Ball,
    /// Bessel-factor recentering constant `17 * 69^((N+1)/2) N!`.
    pub e5: Ball,
    /// Merged Bessel-side constant `2 (E5 + E_{N,1}) + 18 N!`.
    pub e6: Ball,
    /// The final assembled constant bounding the order-`N` remainder.
    pub e_final: Ball,
    /// Validity cutoff `n(N)`.
    pub n_cutoff: u64,
}

/// Assemble all error constants at order `N` and working precision `prec`.
pub fn error_constants(order: u32, prec: u32) -> Result<ErrorConstants> {
    assert!(order >= 1);
    let pi = pi_ball(prec);
    let four_pi = pi.mul(&Ball::from_u64(4, prec));
    let n_fact = Ball::from_integer(&factorial(order), prec);
    let nf = Ball::from_u64(order as u64, prec);
    let half_next = Rational::from((order as i64 + 1, 2));

    let e2 = Ball::from_u64(2, prec)
        .mul(&pi.mul(&Ball::from_u64(2, prec)).sqrt())
        .mul(&four_pi.cosh());
    let e3 = Ball::from_u64(2, prec)
        .mul(&Ball::from_rational(&alpha_27_4(), prec).pow_rational(&half_next));
    let e4 = Ball::from_u64(3, prec).mul(&e2).mul(&e3).mul(&nf);
    let a_next = bessel::asymptotic_coeff(order + 1).abs();
    let e_n1 = Ball::from_u64(2, prec)
        .mul(&bessel::envelope(order, prec))
        .mul(&Ball::from_rational(&a_next, prec))
        .div(&four_pi.pow_i64(order as i64 + 1));
    let e5 = Ball::from_u64(17, prec)
        .mul(&Ball::from_u64(69, prec).pow_rational(&half_next))
        .mul(&n_fact);
    let e6 = Ball::from_u64(2, prec)
        .mul(&e5.add(&e_n1))
        .add(&Ball::from_u64(18, prec).mul(&n_fact));
    let e_final = e2
        .mul(
            &Ball::from_u64(3, prec)
                .mul(&e5)
                .add(&Ball::from_u64(5, prec).mul(&e6))
                .div_u64(30),
        )
        .add(
            &e4.mul(&Ball::from_u64(28, prec).mul(&n_fact).add(&e6)),
        )
        .add(&Ball::from_u64(5, prec).mul(&e5))
        .add(&Ball::from_u64(9, prec).mul(&e6));
    Ok(ErrorConstants {
        order,
        e2,
        e3,
        e4,
        e_n1,
        e5,
        e6,
        e_final,
        n_cutoff: cutoff_n(order)?,
    })
}

/// Reusable evaluator: expansion coefficients and the error constant frozen
/// at one working precision.
#[derive(Clone, Debug)]
pub struct AsymptoticEvaluator {
    pub order: u32,
    pub n_cutoff: u64,
    prec: u32,
    coeff_balls: Vec<Ball>,
    e_final: Ball,
}

impl AsymptoticEvaluator {
    pub fn new(order: u32, prec: u32) -> Result<Self> {
        let consts = error_constants(order, prec)?;
        let pi = pi_ball(prec);
        let set = ExpansionCoeffSet::new(order);
        let coeff_balls = set.b_tilde.iter().map(|p| p.eval(&pi)).collect();
        Ok(AsymptoticEvaluator {
            order,
            n_cutoff: consts.n_cutoff,
            prec,
            coeff_balls,
            e_final: consts.e_final,
        })
    }

    /// Certified evaluation at `n >= n(N)`: exact `p24(n)` is guaranteed to
    /// lie in `value +/- bound`.
    pub fn eval(&self, n: u64) -> Result<CertifiedValue> {
        if n < self.n_cutoff {
            return Err(Error::CutoffViolation {
                n,
                order: self.order,
                cutoff: self.n_cutoff,
            });
        }
        let prec = self.prec;
        let nb = Ball::from_u64(n, prec);
        let inv_sqrt_n = nb.sqrt().recip();
        // prefactor e^(4 pi sqrt n) / (sqrt 2 n^(27/4))
        let four_pi = pi_ball(prec).mul(&Ball::from_u64(4, prec));
        let pref = four_pi
            .mul(&nb.sqrt())
            .exp()
            .div(&Ball::from_u64(2, prec).sqrt().mul(&nb.pow_rational(&Rational::from((27, 4)))));
        // Horner in n^(-1/2)
        let mut sum = Ball::zero(prec);
        for m in (0..=self.order).rev() {
            sum = sum.mul(&inv_sqrt_n).add(&self.coeff_balls[m as usize]);
        }
        let value = pref.mul(&sum);
        let bound = pref
            .mul(&self.e_final)
            .mul(&inv_sqrt_n.pow_i64(self.order as i64 + 1));
        Ok(CertifiedValue { value, bound })
    }
}

/// One-shot certified asymptotic evaluation of `p24(n)` at order `N`.
pub fn asymptotic_p24(n: u64, order: u32) -> Result<CertifiedValue> {
    let prec = default_precision(n) + 64;
    AsymptoticEvaluator::new(order, prec)?.eval(n)
}

/// Asymptotic main term for the general `alpha`-colored counting function:
/// `sqrt(12/alpha) exp(pi alpha lambda / 6) / lambda^((alpha+3)/2)` with
/// `lambda = sqrt(24 n / alpha - 1)`. No error bound is claimed.
pub fn main_term_general(alpha: &Rational, n: u64, prec_opt: Option<u32>) -> Result<Ball> {
    if *alpha <= 0 {
        return Err(Error::Domain("alpha must be positive".into()));
    }
    let ratio = Rational::from(24 * n) / alpha.clone();
    if ratio <= 1 {
        return Err(Error::Domain(format!(
            "main term requires 24 n / alpha > 1, got {ratio}"
        )));
    }
    let prec = prec_opt.unwrap_or_else(|| default_precision(n) + 64);
    let lambda = Ball::from_rational(&(ratio - Rational::from(1)), prec).sqrt();
    let pi = pi_ball(prec);
    let exponent = pi
        .mul(&Ball::from_rational(alpha, prec))
        .div_u64(6)
        .mul(&lambda);
    let front = Ball::from_rational(&(Rational::from(12) / alpha.clone()), prec).sqrt();
    let power = (alpha.clone() + Rational::from(3)) / Rational::from(2);
    Ok(front.mul(&exponent.exp()).div(&lambda.pow_rational(&power)))
}

/// Exact check of the signed convoluted-binomial identity
/// `sum_{s=0..r} (-1)^s binom(r,s) binom(s/2, m)` against its closed form.
/// Requires `r < 2m` (or `r = m = 0`).
pub fn signed_binomial_identity_holds(r: u32, m: u32) -> Result<bool> {
    if !(r == 0 && m == 0) && r >= 2 * m {
        return Err(Error::Precondition(format!(
            "identity requires r < 2m, got r = {r}, m = {m}"
        )));
    }
    let mut lhs = Rational::new();
    for s in 0..=r {
        let mut term = integer_binomial(r as i64, s as i64);
        term *= general_binomial(&Rational::from((s, 2)), m);
        if s % 2 == 1 {
            term = -term;
        }
        lhs += term;
    }
    let rhs = if r == 0 && m == 0 {
        Rational::from(1)
    } else {
        let num = Integer::from(r) << r;
        let den = Integer::from(m) << (2 * m);
        let mut v = Rational::from((num, den));
        v *= integer_binomial(2 * m as i64 - r as i64 - 1, m as i64 - r as i64);
        if m % 2 == 1 {
            v = -v;
        }
        v
    };
    Ok(lhs == rhs)
}

/// Formal re-derivation of the scaled main-term expansion at argument
/// `n + shift`, to order `z^order` in `z = n^(-1/2)`. At `shift = 0` the
/// coefficients must equal [`expansion_coeff`] exactly.
pub fn series_oracle(order: u32, shift: i64) -> Result<FormalSeries> {
    if order > 24 {
        return Err(Error::ResourceLimit(format!(
            "series oracle order budget is 24, requested {order}"
        )));
    }
    if shift.abs() > 4 {
        return Err(Error::ResourceLimit(format!(
            "series oracle shift budget is |s| <= 4, requested {shift}"
        )));
    }
    Ok(shifted_main_series(order, shift))
}
