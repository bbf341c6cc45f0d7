//! Exact finite Laurent polynomials in pi with rational coefficients.
//!
//! These are the closed forms of every coefficient in the truncated
//! asymptotic expansion; arithmetic on them is exact, and only a final
//! evaluation at a pi enclosure touches ball arithmetic.

use super::Ball;
use rug::Rational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `sum_j q_j pi^j` over finitely many integer exponents `j`, with exact
/// rational `q_j`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PiLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl PiLaurent {
    pub fn zero() -> Self {
        PiLaurent::default()
    }

    pub fn one() -> Self {
        PiLaurent::from_term(0, Rational::from(1))
    }

    /// The single term `q * pi^j`.
    pub fn from_term(pi_pow: i64, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if q != 0 {
            terms.insert(pi_pow, q);
        }
        PiLaurent { terms }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_term(0, q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, pi_pow: i64) -> Rational {
        self.terms.get(&pi_pow).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(j, q)| (*j, q))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn insert(&mut self, pi_pow: i64, q: Rational) {
        if q != 0 {
            self.terms.insert(pi_pow, q);
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if *q == 0 {
            return Self::zero();
        }
        let mut out = PiLaurent::default();
        for (j, c) in &self.terms {
            out.insert(*j, (c * q).into());
        }
        out
    }

    /// Multiply by `pi^k`.
    pub fn mul_pi_pow(&self, k: i64) -> Self {
        let mut out = PiLaurent::default();
        for (j, c) in &self.terms {
            out.insert(j + k, c.clone());
        }
        out
    }

    /// Evaluate at a ball enclosure of pi. Horner in `pi^2`, even and odd
    /// exponents separately, to limit radius growth.
    pub fn eval(&self, pi: &Ball) -> Ball {
        let prec = pi.precision();
        if self.is_zero() {
            return Ball::zero(prec);
        }
        let pi_sq = pi.square();
        let even = self.horner_part(&pi_sq, prec, 0);
        let odd = self.horner_part(&pi_sq, prec, 1);
        even.add(&odd.mul(pi))
    }

    /// Horner sum of the terms with exponent parity `parity`, written as a
    /// polynomial in `pi^2` (times a leading `pi^(2*kmin)` shift).
    fn horner_part(&self, pi_sq: &Ball, prec: u32, parity: i64) -> Ball {
        // exponent j = 2k + parity; collect coefficients by k.
        let ks: Vec<(i64, &Rational)> = self
            .terms
            .iter()
            .filter(|(j, _)| (*j % 2 + 2) % 2 == parity)
            .map(|(j, q)| ((j - parity) / 2, q))
            .collect();
        if ks.is_empty() {
            return Ball::zero(prec);
        }
        let k_min = ks.first().unwrap().0;
        let k_max = ks.last().unwrap().0;
        let mut acc = Ball::zero(prec);
        for k in (k_min..=k_max).rev() {
            acc = acc.mul(pi_sq);
            if let Ok(idx) = ks.binary_search_by_key(&k, |(kk, _)| *kk) {
                acc = acc.add(&Ball::from_rational(ks[idx].1, prec));
            }
        }
        if k_min != 0 {
            acc = acc.mul(&pi_sq.pow_i64(k_min));
        }
        acc
    }

    /// Largest absolute value over the stored coefficients, as a rational;
    /// handy for size diagnostics.
    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|q| q.clone().abs())
            .max()
            .unwrap_or_default()
    }
}

impl Add for &PiLaurent {
    type Output = PiLaurent;
    fn add(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out = self.terms.clone();
        for (j, q) in &rhs.terms {
            let entry = out.entry(*j).or_default();
            *entry += q;
            if *entry == 0 {
                out.remove(j);
            }
        }
        PiLaurent { terms: out }
    }
}

impl Sub for &PiLaurent {
    type Output = PiLaurent;
    fn sub(self, rhs: &PiLaurent) -> PiLaurent {
        self + &(-rhs)
    }
}

impl Neg for &PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        let mut out = PiLaurent::default();
        for (j, q) in &self.terms {
            out.insert(*j, -q.clone());
        }
        out
    }
}

impl Mul for &PiLaurent {
    type Output = PiLaurent;
    fn mul(self, rhs: &PiLaurent) -> PiLaurent {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (j1, q1) in &self.terms {
            for (j2, q2) in &rhs.terms {
                let entry = out.entry(j1 + j2).or_default();
                *entry += (q1 * q2).complete();
            }
        }
        out.retain(|_, q| *q != 0);
        PiLaurent { terms: out }
    }
}

use rug::Complete;

impl fmt::Debug for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, q) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{q}")?,
                1 => write!(f, "{q}*pi")?,
                _ => write!(f, "{q}*pi^{j}")?,
            }
        }
        Ok(())
    }
}

/// Wire format: `{"terms": [{"pi_pow": j, "num": "...", "den": "..."}]}`
/// with integers as decimal strings, sorted by exponent.
#[derive(Serialize, Deserialize)]
struct PiLaurentWire {
    terms: Vec<PiTermWire>,
}

#[derive(Serialize, Deserialize)]
struct PiTermWire {
    pi_pow: i64,
    num: String,
    den: String,
}

impl Serialize for PiLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = PiLaurentWire {
            terms: self
                .terms
                .iter()
                .map(|(j, q)| PiTermWire {
                    pi_pow: *j,
                    num: q.numer().to_string(),
                    den: q.denom().to_string(),
                })
                .collect(),
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let wire = PiLaurentWire::deserialize(d)?;
        let mut out = PiLaurent::default();
        for t in wire.terms {
            let num: rug::Integer = t
                .num
                .parse()
                .map_err(|e| DeError::custom(format!("bad numerator: {e}")))?;
            let den: rug::Integer = t
                .den
                .parse()
                .map_err(|e| DeError::custom(format!("bad denominator: {e}")))?;
            if den <= 0 {
                return Err(DeError::custom("denominator must be positive"));
            }
            let q = Rational::from((num, den));
            let entry = out.terms.entry(t.pi_pow).or_default();
            *entry += q;
        }
        out.terms.retain(|_, q| *q != 0);
        Ok(out)
    }
}
