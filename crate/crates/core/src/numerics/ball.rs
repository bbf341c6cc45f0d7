//! Midpoint-radius interval ("ball") arithmetic over arbitrary-precision floats.
//!
//! Every operation returns a ball that contains the exact image of its input
//! balls: midpoints are rounded to nearest and the rounding slack is folded
//! into the radius, while radius arithmetic always rounds up. Domain
//! violations (dividing by a ball containing zero, square roots of negative
//! enclosures, ...) produce an *indeterminate* ball with infinite radius,
//! which no certified comparison ever accepts.

use rug::float::{Constant, Round};
use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound, PowAssignRound};
use rug::{Assign, Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

/// Precision used for radius bookkeeping. Radii only need a couple of
/// correct leading bits; what matters is their exponent.
const RADIUS_PREC: u32 = 64;

/// Minimum midpoint precision accepted by constructors.
pub const MIN_PRECISION: u32 = 32;

/// An interval `[midpoint - radius, midpoint + radius]` with an
/// arbitrary-precision midpoint.
#[derive(Clone)]
pub struct Ball {
    mid: Float,
    rad: Float,
}

fn rad_zero() -> Float {
    Float::with_val(RADIUS_PREC, 0)
}

/// Upper bound on the error of a round-to-nearest operation that produced
/// `x`: half an ulp of `x` at its own precision.
fn half_ulp(x: &Float) -> Float {
    match x.get_exp() {
        Some(e) => {
            let shift = e - x.prec() as i32 - 1;
            Float::with_val(RADIUS_PREC, Float::i_exp(1, shift))
        }
        // A zero midpoint from a nearest rounding means the value was
        // exactly zero (MPFR never underflows to zero at these exponent
        // ranges); no rounding error to account for.
        None => rad_zero(),
    }
}

impl Ball {
    // ---- constructors ----------------------------------------------------

    /// Exact zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: Float::with_val(prec, 0),
            rad: rad_zero(),
        }
    }

    /// Exact one at the given precision.
    pub fn one(prec: u32) -> Self {
        Ball {
            mid: Float::with_val(prec, 1),
            rad: rad_zero(),
        }
    }

    /// Ball containing the exact integer `v` (radius zero when representable).
    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let (mid, dir) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = if dir == Ordering::Equal {
            rad_zero()
        } else {
            half_ulp(&mid)
        };
        Ball { mid, rad }
    }

    /// Ball containing the exact rational `v`.
    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        let (mid, dir) = Float::with_val_round(prec, v, Round::Nearest);
        let rad = if dir == Ordering::Equal {
            rad_zero()
        } else {
            half_ulp(&mid)
        };
        Ball { mid, rad }
    }

    pub fn from_u64(v: u64, prec: u32) -> Self {
        Self::from_integer(&Integer::from(v), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_integer(&Integer::from(v), prec)
    }

    /// Ball of radius at most `2^(1-prec)` containing pi.
    pub fn pi(prec: u32) -> Self {
        let (mid, _) = Float::with_val_round(prec, Constant::Pi, Round::Nearest);
        let rad = half_ulp(&mid);
        Ball { mid, rad }
    }

    /// Indeterminate ball: contains no certifiable information.
    pub fn indeterminate(prec: u32) -> Self {
        Ball {
            mid: Float::with_val(prec, Float::parse("nan").unwrap()),
            rad: Float::with_val(RADIUS_PREC, Float::parse("inf").unwrap()),
        }
    }

    /// Build from rigorous lower/upper endpoints.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Self {
        debug_assert!(lo <= hi, "from_endpoints: lo > hi");
        if !lo.is_finite() || !hi.is_finite() {
            return Self::indeterminate(prec);
        }
        let mut mid = Float::with_val_round(prec, lo + hi, Round::Nearest).0;
        mid /= 2; // exact in binary
        let (a, _) = Float::with_val_round(RADIUS_PREC, hi - &mid, Round::Up);
        let (b, _) = Float::with_val_round(RADIUS_PREC, &mid - lo, Round::Up);
        let rad = if a >= b { a } else { b };
        debug_assert!(rad >= 0);
        Ball { mid, rad }
    }

    // ---- accessors -------------------------------------------------------

    pub fn midpoint(&self) -> &Float {
        &self.mid
    }

    pub fn radius(&self) -> &Float {
        &self.rad
    }

    pub fn precision(&self) -> u32 {
        self.mid.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// Re-round to a (typically lower) midpoint precision, folding the extra
    /// rounding error into the radius.
    pub fn round_to(&self, prec: u32) -> Ball {
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        let (mid, dir) = Float::with_val_round(prec, &self.mid, Round::Nearest);
        let mut rad = self.rad.clone();
        if dir != Ordering::Equal {
            rad.add_assign_round(half_ulp(&mid), Round::Up);
        }
        Ball { mid, rad }
    }

    /// Rigorous lower endpoint (rounded down).
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.precision(), &self.mid - &self.rad, Round::Down).0
    }

    /// Rigorous upper endpoint (rounded up).
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.precision(), &self.mid + &self.rad, Round::Up).0
    }

    // ---- arithmetic ------------------------------------------------------

    pub fn neg(&self) -> Ball {
        Ball {
            mid: Float::with_val(self.precision(), -&self.mid),
            rad: self.rad.clone(),
        }
    }

    pub fn abs(&self) -> Ball {
        if !self.is_finite() {
            return Self::indeterminate(self.precision());
        }
        let lo = self.lower();
        let hi = self.upper();
        if lo >= 0 {
            self.clone()
        } else if hi <= 0 {
            self.neg()
        } else {
            let mut m = Float::with_val(self.precision(), (-lo).max(&hi));
            let zero = Float::new(self.precision());
            let prec = self.precision();
            m.abs_mut();
            Ball::from_endpoints(&zero, &m, prec)
        }
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.precision().max(other.precision());
        if !self.is_finite() || !other.is_finite() {
            return Self::indeterminate(prec);
        }
        let (mid, dir) = Float::with_val_round(prec, &self.mid + &other.mid, Round::Nearest);
        let mut rad = Float::with_val_round(RADIUS_PREC, &self.rad + &other.rad, Round::Up).0;
        if dir != Ordering::Equal {
            rad.add_assign_round(half_ulp(&mid), Round::Up);
        }
        Ball { mid, rad }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.precision().max(other.precision());
        if !self.is_finite() || !other.is_finite() {
            return Self::indeterminate(prec);
        }
        let (mid, dir) = Float::with_val_round(prec, &self.mid * &other.mid, Round::Nearest);
        // |m1| r2 + |m2| r1 + r1 r2, everything rounded up.
        let (a1, _) = Float::with_val_round(RADIUS_PREC, self.mid.abs_ref(), Round::Up);
        let (a2, _) = Float::with_val_round(RADIUS_PREC, other.mid.abs_ref(), Round::Up);
        let mut rad = Float::with_val_round(RADIUS_PREC, &a1 * &other.rad, Round::Up).0;
        let mut t = Float::with_val_round(RADIUS_PREC, &a2 * &self.rad, Round::Up).0;
        rad.add_assign_round(&t, Round::Up);
        t.assign(&self.rad);
        t.mul_assign_round(&other.rad, Round::Up);
        rad.add_assign_round(&t, Round::Up);
        if dir != Ordering::Equal {
            rad.add_assign_round(half_ulp(&mid), Round::Up);
        }
        Ball { mid, rad }
    }

    /// Multiplicative inverse; indeterminate if the ball contains zero.
    pub fn recip(&self) -> Ball {
        let prec = self.precision();
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        let lo = self.lower();
        let hi = self.upper();
        if lo.is_sign_negative() != hi.is_sign_negative() || lo.is_zero() || hi.is_zero() {
            return Self::indeterminate(prec);
        }
        // 1/x is decreasing on either side of zero: endpoints swap.
        let mut new_lo = Float::with_val(prec, 1);
        new_lo.div_assign_round(&hi, Round::Down);
        let mut new_hi = Float::with_val(prec, 1);
        new_hi.div_assign_round(&lo, Round::Up);
        Ball::from_endpoints(&new_lo, &new_hi, prec)
    }

    pub fn div(&self, other: &Ball) -> Ball {
        self.mul(&other.recip())
    }

    /// Divide by an exact unsigned integer.
    pub fn div_u64(&self, d: u64) -> Ball {
        let prec = self.precision();
        if !self.is_finite() || d == 0 {
            return Self::indeterminate(prec);
        }
        let (mid, dir) = Float::with_val_round(prec, &self.mid / d, Round::Nearest);
        let mut rad = Float::with_val(RADIUS_PREC, &self.rad);
        rad.div_assign_round(d, Round::Up);
        if dir != Ordering::Equal {
            rad.add_assign_round(half_ulp(&mid), Round::Up);
        }
        Ball { mid, rad }
    }

    /// Multiply by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> Ball {
        self.mul(&Ball::from_rational(q, self.precision()))
    }

    // ---- monotone elementary functions ------------------------------------

    fn monotone_incr(&self, f: impl Fn(&mut Float, Round)) -> Ball {
        let prec = self.precision();
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        let mut lo = self.lower();
        let mut hi = self.upper();
        f(&mut lo, Round::Down);
        f(&mut hi, Round::Up);
        if !lo.is_finite() || !hi.is_finite() || lo.is_nan() || hi.is_nan() {
            return Self::indeterminate(prec);
        }
        Ball::from_endpoints(&lo, &hi, prec)
    }

    pub fn exp(&self) -> Ball {
        self.monotone_incr(|x, r| {
            x.exp_round(r);
        })
    }

    /// Natural logarithm; indeterminate unless the ball is strictly positive.
    pub fn ln(&self) -> Ball {
        if !self.is_finite() || self.lower() <= 0 {
            return Self::indeterminate(self.precision());
        }
        self.monotone_incr(|x, r| {
            x.ln_round(r);
        })
    }

    /// Square root; indeterminate unless the ball is nonnegative.
    pub fn sqrt(&self) -> Ball {
        if !self.is_finite() || self.lower() < 0 {
            return Self::indeterminate(self.precision());
        }
        self.monotone_incr(|x, r| {
            x.sqrt_round(r);
        })
    }

    pub fn sinh(&self) -> Ball {
        self.monotone_incr(|x, r| {
            x.sinh_round(r);
        })
    }

    pub fn cosh(&self) -> Ball {
        let prec = self.precision();
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        let lo = self.lower();
        let hi = self.upper();
        if lo >= 0 {
            self.monotone_incr(|x, r| {
                x.cosh_round(r);
            })
        } else if hi <= 0 {
            self.neg().monotone_incr(|x, r| {
                x.cosh_round(r);
            })
        } else {
            // Straddles zero: minimum is cosh(0) = 1.
            let mut a = lo;
            a.abs_mut();
            let m = if a >= hi { a } else { hi };
            let mut top = m;
            top.cosh_round(Round::Up);
            Ball::from_endpoints(&Float::with_val(prec, 1), &top, prec)
        }
    }

    /// Cosine via the Lipschitz bound |cos'| <= 1.
    pub fn cos(&self) -> Ball {
        let prec = self.precision();
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        let (mid, _) = Float::with_val_round(prec, self.mid.cos_ref(), Round::Nearest);
        let mut rad = Float::with_val(RADIUS_PREC, &self.rad);
        rad.add_assign_round(half_ulp(&mid), Round::Up);
        Ball { mid, rad }
    }

    /// Sine via the Lipschitz bound |sin'| <= 1.
    pub fn sin(&self) -> Ball {
        let prec = self.precision();
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        let (mid, _) = Float::with_val_round(prec, self.mid.sin_ref(), Round::Nearest);
        let mut rad = Float::with_val(RADIUS_PREC, &self.rad);
        rad.add_assign_round(half_ulp(&mid), Round::Up);
        Ball { mid, rad }
    }

    // ---- powers ------------------------------------------------------------

    /// Integer power.
    pub fn pow_i64(&self, k: i64) -> Ball {
        let prec = self.precision();
        if !self.is_finite() {
            return Self::indeterminate(prec);
        }
        if k == 0 {
            return Ball::one(prec);
        }
        if k < 0 {
            return self.pow_i64(-k).recip();
        }
        let lo = self.lower();
        let hi = self.upper();
        let straddles = lo < 0 && hi > 0;
        let pow_dir = |x: &Float, r: Round| -> Float {
            let mut y = Float::with_val(prec, 1);
            let mut base = x.clone();
            let mut e = k as u64;
            // Plain square-and-multiply with one-sided rounding. The result
            // direction is preserved only for nonnegative bases, so callers
            // below always pass nonnegative values.
            loop {
                if e & 1 == 1 {
                    y.mul_assign_round(&base, r);
                }
                e >>= 1;
                if e == 0 {
                    break;
                }
                let b2 = base.clone();
                base.mul_assign_round(&b2, r);
            }
            y
        };
        if k % 2 == 0 {
            // Even power: |x|^k.
            let mut alo = lo.clone();
            alo.abs_mut();
            let mut ahi = hi.clone();
            ahi.abs_mut();
            if straddles {
                let big = if alo >= ahi { alo } else { ahi };
                let top = pow_dir(&big, Round::Up);
                Ball::from_endpoints(&Float::with_val(prec, 0), &top, prec)
            } else {
                let (small, big) = if alo <= ahi { (alo, ahi) } else { (ahi, alo) };
                let bot = pow_dir(&small, Round::Down);
                let top = pow_dir(&big, Round::Up);
                Ball::from_endpoints(&bot, &top, prec)
            }
        } else {
            // Odd power: monotone increasing; route negatives through |x|^k.
            let side = |x: &Float, r: Round| -> Float {
                if x.is_sign_negative() {
                    let mut a = x.clone();
                    a.abs_mut();
                    let opposite = match r {
                        Round::Down => Round::Up,
                        _ => Round::Down,
                    };
                    -pow_dir(&a, opposite)
                } else {
                    pow_dir(x, r)
                }
            };
            let bot = side(&lo, Round::Down);
            let top = side(&hi, Round::Up);
            Ball::from_endpoints(&bot, &top, prec)
        }
    }

    /// Rational power `x^(p/q)`; requires a strictly positive ball unless the
    /// exponent is an integer.
    pub fn pow_rational(&self, e: &Rational) -> Ball {
        let prec = self.precision();
        if e.denom() == &Integer::from(1) {
            let k = e.numer().to_i64().unwrap_or(i64::MAX);
            return self.pow_i64(k);
        }
        if !self.is_finite() || self.lower() <= 0 {
            return Self::indeterminate(prec);
        }
        // Enclose the exponent, then take corner extrema: t^u is monotone in
        // each argument separately for t > 0.
        let (e_lo, _) = Float::with_val_round(prec, e, Round::Down);
        let (e_hi, _) = Float::with_val_round(prec, e, Round::Up);
        let xs = [self.lower(), self.upper()];
        let es = [e_lo, e_hi];
        let mut bot: Option<Float> = None;
        let mut top: Option<Float> = None;
        for x in &xs {
            for ex in &es {
                let mut down = x.clone();
                down.pow_assign_round(ex, Round::Down);
                let mut up = x.clone();
                up.pow_assign_round(ex, Round::Up);
                bot = Some(match bot {
                    Some(b) => if down < b { down } else { b },
                    None => down,
                });
                top = Some(match top {
                    Some(t) => if up > t { up } else { t },
                    None => up,
                });
            }
        }
        Ball::from_endpoints(&bot.unwrap(), &top.unwrap(), prec)
    }

    pub fn square(&self) -> Ball {
        self.pow_i64(2)
    }

    // ---- comparisons & membership ------------------------------------------

    /// Certified strict `self < other`: the balls are disjoint in order.
    pub fn certified_lt(&self, other: &Ball) -> bool {
        self.is_finite() && other.is_finite() && self.upper() < other.lower()
    }

    /// Certified `self <= other`: upper endpoint does not exceed the other's
    /// lower endpoint.
    pub fn certified_le(&self, other: &Ball) -> bool {
        self.is_finite() && other.is_finite() && self.upper() <= other.lower()
    }

    /// Certified strict positivity.
    pub fn certified_positive(&self) -> bool {
        self.is_finite() && self.lower() > 0
    }

    pub fn certified_negative(&self) -> bool {
        self.is_finite() && self.upper() < 0
    }

    /// Whether the exact rational `q` lies inside the ball. Comparisons
    /// between `Float` and `Rational` are exact.
    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.is_finite() && self.lower() <= *q && *q <= self.upper()
    }

    pub fn contains_integer(&self, v: &Integer) -> bool {
        self.is_finite() && self.lower() <= *v && *v <= self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        self.is_finite() && self.lower() <= 0 && self.upper() >= 0
    }

    /// Whether `other` is contained in `self` (as sets).
    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.is_finite()
            && other.is_finite()
            && self.lower() <= other.lower()
            && other.upper() <= self.upper()
    }

    /// The integers lying in the ball, if their count is small.
    pub fn integers_within(&self, limit: usize) -> Option<Vec<Integer>> {
        if !self.is_finite() {
            return None;
        }
        let lo = self.lower().ceil().to_integer()?;
        let hi = self.upper().floor().to_integer()?;
        let mut out = Vec::new();
        let mut v = lo;
        while v <= hi {
            if out.len() >= limit {
                return None;
            }
            out.push(v.clone());
            v += 1;
        }
        Some(out)
    }

    // ---- formatting ----------------------------------------------------------

    /// Decimal rendering of the midpoint with the given number of significant
    /// digits (never locale-formatted).
    pub fn midpoint_decimal(&self, digits: usize) -> String {
        float_decimal(&self.mid, digits)
    }

    pub fn radius_decimal(&self) -> String {
        float_decimal(&self.rad, 5)
    }
}

/// Plain scientific-notation decimal string for a float.
pub fn float_decimal(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    if x.is_zero() {
        return "0".into();
    }
    let (sign, digs, exp) = x.to_sign_string_exp(10, Some(digits.max(2)));
    let sign = if sign { "-" } else { "" };
    let exp = exp.unwrap_or(0);
    let mantissa = format!("{}.{}", &digs[..1], &digs[1..]);
    format!("{sign}{mantissa}e{}", exp - 1)
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ball({} +/- {})",
            self.midpoint_decimal(20),
            self.radius_decimal()
        )
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} +/- {}",
            self.midpoint_decimal(30),
            self.radius_decimal()
        )
    }
}
