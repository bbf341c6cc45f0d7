//! Symbolic verification of the corollary expansions: the inequality
//! combinations are formed over shifted formal series with exact
//! coefficients, and their leading terms are compared against the expected
//! closed forms with zero tolerance.

use crate::error::{Error, Result};
use crate::expansion::{shifted_main_series, FormalSeries};
use crate::numerics::{integer_binomial, odd_double_factorial, PiLaurent};
use rug::{Integer, Rational};
use serde::Serialize;

/// The inequality families with known expected leading behavior.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryTarget {
    /// Order-3 Turan combination; leading `4 pi^3 z^9`.
    Turan3,
    /// Twice-iterated log-concavity; leading `2 pi^3 z^9`.
    LogConcave2,
    /// Laguerre combination of order `m`; leading `(2 pi)^m (2m-1)!!/2 z^(3m)`.
    Laguerre(u32),
}

impl CorollaryTarget {
    pub fn label(&self) -> String {
        match self {
            CorollaryTarget::Turan3 => "turan3".into(),
            CorollaryTarget::LogConcave2 => "logconcave2".into(),
            CorollaryTarget::Laguerre(m) => format!("laguerre({m})"),
        }
    }
}

/// Outcome of a symbolic corollary check.
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub target: String,
    /// Order of the first (potentially) nonzero coefficient.
    pub leading_order: u32,
    pub leading: PiLaurent,
    pub expected_leading: PiLaurent,
    pub subleading_order: Option<u32>,
    pub subleading: Option<PiLaurent>,
    pub expected_subleading: Option<PiLaurent>,
    /// All coefficients below the leading order vanish exactly.
    pub vanishing_verified: bool,
    /// Leading (and, where expected, subleading) coefficients match exactly.
    pub matches: bool,
}

fn series_family(order: u32, shifts: std::ops::RangeInclusive<i64>) -> Vec<FormalSeries> {
    shifts.map(|s| shifted_main_series(order, s)).collect()
}

/// Build the corollary's polynomial combination as a formal series with
/// exact coefficients and compare leading terms against the expected
/// closed forms. `depth` bounds the series order for the quartic
/// combinations (at least 10 is needed to reach their subleading term);
/// the Laguerre combination fixes its order at `3m (+1)` by itself.
pub fn corollary_symbolic_check(target: CorollaryTarget, depth: u32) -> Result<CorollaryReport> {
    if depth > 12 {
        return Err(Error::ResourceLimit(format!(
            "symbolic check depth budget is 12, requested {depth}"
        )));
    }
    match target {
        CorollaryTarget::Turan3 => {
            if depth < 10 {
                return Err(Error::Precondition(
                    "turan3 needs depth >= 10 to reach its subleading term".into(),
                ));
            }
            // shifts -1..=2, combination
            // 4 (F0^2 - F-1 F1)(F1^2 - F0 F2) - (F0 F1 - F-1 F2)^2
            let f = series_family(depth, -1..=2);
            let (fm1, f0, f1, f2) = (&f[0], &f[1], &f[2], &f[3]);
            let g1 = f0.mul(f0).sub(&fm1.mul(f1));
            let g2 = f1.mul(f1).sub(&f0.mul(f2));
            let cross = f0.mul(f1).sub(&fm1.mul(f2));
            let combo = g1
                .mul(&g2)
                .scale_rational(&Rational::from(4))
                .sub(&cross.mul(&cross));
            let expected_leading = PiLaurent::from_term(3, Rational::from(4));
            // -pi^2 (1683 + 64 pi^2)
            let expected_sub = &PiLaurent::from_term(2, Rational::from(-1683))
                + &PiLaurent::from_term(4, Rational::from(-64));
            finish_report(target, combo, 9, expected_leading, Some(expected_sub))
        }
        CorollaryTarget::LogConcave2 => {
            if depth < 10 {
                return Err(Error::Precondition(
                    "logconcave2 needs depth >= 10 to reach its subleading term".into(),
                ));
            }
            // G_j = F_{j+1}^2 - F_j F_{j+2}; combination G_1^2 - G_0 G_2.
            let f = series_family(depth, 0..=4);
            let g: Vec<FormalSeries> = (0..3)
                .map(|j| f[j + 1].mul(&f[j + 1]).sub(&f[j].mul(&f[j + 2])))
                .collect();
            let combo = g[1].mul(&g[1]).sub(&g[0].mul(&g[2]));
            let expected_leading = PiLaurent::from_term(3, Rational::from(2));
            let expected_sub = &PiLaurent::from_term(2, Rational::from(-843))
                + &PiLaurent::from_term(4, Rational::from(-64));
            finish_report(target, combo, 9, expected_leading, Some(expected_sub))
        }
        CorollaryTarget::Laguerre(m) => {
            if m < 1 {
                return Err(Error::Precondition("Laguerre order must be >= 1".into()));
            }
            let lead_order = 3 * m;
            if lead_order > 24 {
                return Err(Error::ResourceLimit(format!(
                    "Laguerre order {m} needs series order {lead_order} > budget 24"
                )));
            }
            // One extra order for the subleading report when it fits.
            let order = (lead_order + 1).min(24);
            let f = series_family(order, 0..=(2 * m as i64));
            let mut combo = FormalSeries::zero(order);
            for k in 0..=(2 * m) {
                let b = integer_binomial(2 * m as i64, k as i64);
                let mut weight = Rational::from(b.numer());
                if (m + k) % 2 == 1 {
                    weight = -weight;
                }
                combo = combo.add(
                    &f[k as usize]
                        .mul(&f[(2 * m - k) as usize])
                        .scale_rational(&weight),
                );
            }
            combo = combo.scale_rational(&Rational::from((1, 2)));
            // (2 pi)^m (2m-1)!! / 2
            let c = Rational::from(Integer::from(1) << m) * Rational::from(odd_double_factorial(m))
                / Rational::from(2);
            let expected_leading = PiLaurent::from_term(m as i64, c);
            finish_report(target, combo, lead_order, expected_leading, None)
        }
    }
}

fn finish_report(
    target: CorollaryTarget,
    combo: FormalSeries,
    leading_order: u32,
    expected_leading: PiLaurent,
    expected_subleading: Option<PiLaurent>,
) -> Result<CorollaryReport> {
    let vanishing_verified = (0..leading_order).all(|j| combo.coeff(j).is_zero());
    let leading = combo.coeff(leading_order).clone();
    let subleading_order = if combo.order() > leading_order {
        Some(leading_order + 1)
    } else {
        None
    };
    let subleading = subleading_order.map(|j| combo.coeff(j).clone());
    let mut matches = vanishing_verified && leading == expected_leading;
    if let (Some(exp), Some(got)) = (&expected_subleading, &subleading) {
        matches = matches && exp == got;
    }
    Ok(CorollaryReport {
        target: target.label(),
        leading_order,
        leading,
        expected_leading,
        subleading_order,
        subleading,
        expected_subleading,
        vanishing_verified,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_m2_leading_is_6_pi_squared() {
        let rep = corollary_symbolic_check(CorollaryTarget::Laguerre(2), 12).unwrap();
        assert!(rep.vanishing_verified);
        assert_eq!(rep.leading_order, 6);
        assert_eq!(
            rep.leading,
            PiLaurent::from_term(2, Rational::from(6)),
            "leading coefficient should be 6 pi^2"
        );
        assert!(rep.matches);
    }

    #[test]
    fn depth_budget_enforced() {
        assert!(matches!(
            corollary_symbolic_check(CorollaryTarget::Turan3, 13),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            corollary_symbolic_check(CorollaryTarget::Turan3, 9),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            corollary_symbolic_check(CorollaryTarget::Laguerre(9), 12),
            Err(Error::ResourceLimit(_))
        ));
    }
}
