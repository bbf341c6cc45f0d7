//! Exact and certified-approximate scalar arithmetic shared by all modules.
//!
//! Exact values live in [`ExactInt`] and [`ExactRational`] (GMP-backed,
//! always canonical: positive denominator, reduced). Certified numeric
//! values live in [`Ball`]. Expansion coefficients, which are rational
//! combinations of integer powers of pi, live in [`PiLaurent`].

mod ball;
mod pilaurent;

pub use ball::{float_decimal, Ball, MIN_PRECISION};
pub use pilaurent::PiLaurent;

use rug::{Complete, Integer, Rational};

/// Arbitrary-precision integer scalar.
pub type ExactInt = Integer;
/// Arbitrary-precision rational scalar; rug keeps gcd(|num|, den) = 1 and
/// den > 0 after every operation.
pub type ExactRational = Rational;

/// A truncated-expansion result: `value` approximates the target and the
/// exact quantity is guaranteed to lie in `value +/- bound`.
#[derive(Clone, Debug)]
pub struct CertifiedValue {
    pub value: Ball,
    pub bound: Ball,
}

impl CertifiedValue {
    /// Whether the exact integer `v` lies inside `value +/- bound`,
    /// certified from the outer endpoints of both balls.
    pub fn contains_integer(&self, v: &Integer) -> bool {
        if !self.value.is_finite() || !self.bound.is_finite() {
            return false;
        }
        let lo = self.value.lower() - self.bound.upper();
        let hi = self.value.upper() + self.bound.upper();
        lo <= *v && *v <= hi
    }

    /// Whether an entire ball lies inside `value +/- bound`.
    pub fn contains_ball(&self, b: &Ball) -> bool {
        if !self.value.is_finite() || !self.bound.is_finite() || !b.is_finite() {
            return false;
        }
        let lo = self.value.lower() - self.bound.upper();
        let hi = self.value.upper() + self.bound.upper();
        lo <= b.lower() && b.upper() <= hi
    }
}

/// Rising factorial `(b)_m = b (b+1) ... (b+m-1)`, with `(b)_0 = 1`.
pub fn rising_factorial(b: &Rational, m: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut factor = b.clone();
    for _ in 0..m {
        acc *= &factor;
        factor += 1;
    }
    acc
}

/// Generalized binomial coefficient `binom(b, m) = b (b-1) ... (b-m+1) / m!`,
/// with `binom(b, 0) = 1`.
pub fn general_binomial(b: &Rational, m: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut factor = b.clone();
    for j in 0..m {
        acc *= &factor;
        acc /= j + 1;
        factor -= 1;
    }
    acc
}

/// Integer binomial coefficient with the usual convention
/// `binom(n, k) = 0` for `k < 0`; `n` may be negative.
pub fn integer_binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::new();
    }
    general_binomial(&Rational::from(n), k as u32)
}

/// Exact factorial.
pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).complete()
}

/// Double factorial `(2m-1)!! = 1 * 3 * 5 * ... * (2m-1)`, with `(-1)!! = 1`.
pub fn odd_double_factorial(m: u32) -> Integer {
    let mut acc = Integer::from(1);
    let mut f = 1u64;
    for _ in 0..m {
        acc *= f;
        f += 2;
    }
    acc
}

/// Default working precision for certified evaluation at argument `n`:
/// enough bits to absorb the magnitude of `exp(4 pi sqrt(n))` plus guard
/// bits, so truncation error dominates every reported bound.
pub fn default_precision(n: u64) -> u32 {
    let x = 4.0 * std::f64::consts::PI * (n as f64).sqrt() / std::f64::consts::LN_2;
    (x.ceil() as u32).saturating_add(64).max(MIN_PRECISION)
}

/// Certified ball for pi; radius at most `2^(1-precision)`.
pub fn pi_ball(precision: u32) -> Ball {
    assert!(precision >= MIN_PRECISION, "precision must be >= 32");
    Ball::pi(precision)
}
