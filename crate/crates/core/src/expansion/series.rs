//! Truncated formal power series in `z = n^(-1/2)` with exact [`PiLaurent`]
//! coefficients, and the independent oracle that re-derives the scaled
//! main-term expansion by formal composition.
//!
//! The oracle path uses only generic series primitives (exponential of a
//! zero-constant-term series, generalized binomial powers); it shares no
//! code with the closed-form convolution family in the parent module.

use crate::bessel;
use crate::numerics::{general_binomial, Ball, PiLaurent};
use rug::ops::Pow;
use rug::{Integer, Rational};

/// `sum_{j=0..order} c_j z^j + O(z^(order+1))` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<PiLaurent>,
}

impl FormalSeries {
    pub fn zero(order: u32) -> Self {
        FormalSeries {
            coeffs: vec![PiLaurent::zero(); order as usize + 1],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = PiLaurent::one();
        s
    }

    /// Single term `c z^k`.
    pub fn monomial(order: u32, k: u32, c: PiLaurent) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k as usize] = c;
        }
        s
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, j: u32) -> &PiLaurent {
        &self.coeffs[j as usize]
    }

    pub fn coeffs(&self) -> &[PiLaurent] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &FormalSeries) -> FormalSeries {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        FormalSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FormalSeries) -> FormalSeries {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        FormalSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &FormalSeries) -> FormalSeries {
        assert_eq!(self.order(), rhs.order(), "order mismatch");
        let n = self.coeffs.len();
        let mut out = vec![PiLaurent::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        FormalSeries { coeffs: out }
    }

    pub fn scale(&self, c: &PiLaurent) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(q)).collect(),
        }
    }

    /// Shift by `z^k` (truncating at the order).
    pub fn shift(&self, k: u32) -> FormalSeries {
        let n = self.coeffs.len();
        let mut out = vec![PiLaurent::zero(); n];
        for i in 0..n.saturating_sub(k as usize) {
            out[i + k as usize] = self.coeffs[i].clone();
        }
        FormalSeries { coeffs: out }
    }

    /// Exponential of a series with zero constant term, by the standard
    /// derivative recurrence `j f_j = sum_{i=1..j} i g_i f_{j-i}`.
    pub fn exp(&self) -> FormalSeries {
        assert!(
            self.coeffs[0].is_zero(),
            "exp requires zero constant term"
        );
        let n = self.coeffs.len();
        let mut f = vec![PiLaurent::zero(); n];
        f[0] = PiLaurent::one();
        for j in 1..n {
            let mut acc = PiLaurent::zero();
            for i in 1..=j {
                if self.coeffs[i].is_zero() || f[j - i].is_zero() {
                    continue;
                }
                let term = (&self.coeffs[i] * &f[j - i]).scale(&Rational::from(i as u64));
                acc = &acc + &term;
            }
            f[j] = acc.scale(&Rational::from((1u64, j as u64)));
        }
        FormalSeries { coeffs: f }
    }

    /// `(1 + h)^alpha` for a series `h` with zero constant term, by the
    /// recurrence `j p_j = sum_{i=1..j} (alpha i - (j - i)) h_i p_{j-i}`.
    pub fn binomial_power(&self, alpha: &Rational) -> FormalSeries {
        assert!(
            self.coeffs[0].is_zero(),
            "binomial power expects (1 + h) with h(0) = 0"
        );
        let n = self.coeffs.len();
        let mut p = vec![PiLaurent::zero(); n];
        p[0] = PiLaurent::one();
        for j in 1..n {
            let mut acc = PiLaurent::zero();
            for i in 1..=j {
                if self.coeffs[i].is_zero() || p[j - i].is_zero() {
                    continue;
                }
                let weight = alpha.clone() * Rational::from(i as u64) - Rational::from((j - i) as u64);
                acc = &acc + &(&self.coeffs[i] * &p[j - i]).scale(&weight);
            }
            p[j] = acc.scale(&Rational::from((1u64, j as u64)));
        }
        FormalSeries { coeffs: p }
    }

    /// Numeric evaluation at `z = n^(-1/2)` with a pi enclosure.
    pub fn eval_at(&self, n: u64, prec: u32) -> Ball {
        let pi = crate::numerics::pi_ball(prec);
        let z = Ball::from_u64(n, prec).sqrt().recip();
        let mut acc = Ball::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&z).add(&c.eval(&pi));
        }
        acc
    }
}

/// The expansion of `sqrt 2 * n^(27/4) * e^(-4 pi sqrt n) * [scaled main
/// term at argument n + shift]` as a formal series in `z = n^(-1/2)`,
/// assembled from four independently composed factors:
/// the exponential factor `exp(4 pi (sqrt(n+shift-1) - sqrt n))`, the two
/// binomial factors `(1 - 1/(n+shift))^(-27/4)` and `((n+shift)/n)^(-27/4)`,
/// and the truncated Bessel sum `sum_m (-1)^m a_m(13) (4 pi)^-m
/// (n+shift-1)^(-m/2)`.
pub fn shifted_main_series(order: u32, shift: i64) -> FormalSeries {
    let s_minus_1 = Rational::from(shift - 1);
    let neg_s = Rational::from(-shift);
    let alpha = Rational::from((-27, 4));

    // (a) exponential factor: 4 pi z^-1 (sqrt(1 + (s-1) z^2) - 1)
    //     = 4 pi sum_{j>=1} binom(1/2, j) (s-1)^j z^(2j-1)
    let mut exp_arg = FormalSeries::zero(order);
    let mut spow = Rational::from(1);
    for j in 1..=(order / 2 + 1) {
        spow *= &s_minus_1;
        if 2 * j - 1 > order {
            break;
        }
        let c = general_binomial(&Rational::from((1, 2)), j) * &spow * Rational::from(4);
        exp_arg = exp_arg.add(&FormalSeries::monomial(
            order,
            2 * j - 1,
            PiLaurent::from_term(1, c),
        ));
    }
    let factor_exp = exp_arg.exp();

    // (b) (1 - u)^(-27/4) with u = 1/(n+s) = z^2 sum_j (-s)^j z^(2j)
    let mut neg_u = FormalSeries::zero(order);
    let mut spow = Rational::from(1);
    for j in 0..=(order / 2) {
        if 2 * j + 2 > order {
            break;
        }
        let c = -(spow.clone());
        neg_u = neg_u.add(&FormalSeries::monomial(
            order,
            2 * j + 2,
            PiLaurent::from_rational(c),
        ));
        spow *= &neg_s;
    }
    let factor_inner = neg_u.binomial_power(&alpha);

    // (c) ((n+s)/n)^(-27/4) = (1 + s z^2)^(-27/4)
    let factor_outer = if order >= 2 && shift != 0 {
        FormalSeries::monomial(order, 2, PiLaurent::from_rational(Rational::from(shift)))
            .binomial_power(&alpha)
    } else {
        FormalSeries::one(order)
    };

    // (d) Bessel sum: sum_m (-1)^m a_m(13) / (4 pi)^m * z^m (1 + (s-1) z^2)^(-m/2)
    let mut factor_bessel = FormalSeries::zero(order);
    for m in 0..=order {
        let mut c = bessel::asymptotic_coeff(m);
        c /= Rational::from(Integer::from(4).pow(m));
        if m % 2 == 1 {
            c = -c;
        }
        let weight = PiLaurent::from_term(-(m as i64), c);
        let base = if order >= m + 2 && s_minus_1 != 0 {
            FormalSeries::monomial(order, 2, PiLaurent::from_rational(s_minus_1.clone()))
                .binomial_power(&Rational::from((-(m as i64), 2)))
        } else {
            FormalSeries::one(order)
        };
        factor_bessel = factor_bessel.add(&base.shift(m).scale(&weight));
    }

    factor_exp
        .mul(&factor_inner)
        .mul(&factor_outer)
        .mul(&factor_bessel)
}
