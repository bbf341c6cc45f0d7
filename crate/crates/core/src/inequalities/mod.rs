//! Inequality operators on the exact sequence, Jensen-polynomial
//! hyperbolicity via exact root counting, and numeric verification of the
//! conjectured Laguerre growth.
//!
//! Everything on the verdict path is exact integer/rational arithmetic;
//! balls appear only in the conjecture ratio reports.

mod sturm;
pub mod symbolic;

pub use sturm::{count_real_roots_squarefree, is_hyperbolic, IntPoly};

use crate::error::{Error, Result};
use crate::numerics::{
    default_precision, integer_binomial, odd_double_factorial, pi_ball, Ball, ExactInt,
    ExactRational,
};
use crate::seqcore::SeqTable;
use rug::{Complete, Integer, Rational};
use serde::Serialize;

/// The log-concavity operator on a window of three consecutive values:
/// `a(n+1)^2 - a(n) a(n+2)`, exact.
pub fn log_concavity_value(window: &[Integer]) -> ExactInt {
    assert_eq!(window.len(), 3, "log-concavity needs three consecutive values");
    (&window[1] * &window[1]).complete() - (&window[0] * &window[2]).complete()
}

/// One application of the log-concavity operator to a whole slice
/// (length shrinks by 2).
fn iterate_log_concavity(values: &[Integer]) -> Vec<Integer> {
    values
        .windows(3)
        .map(log_concavity_value)
        .collect()
}

/// Order-3 Turan expression on the window `a(n-1), a(n), a(n+1), a(n+2)`:
/// `4 (a_n^2 - a_{n-1} a_{n+1}) (a_{n+1}^2 - a_n a_{n+2})
///  - (a_n a_{n+1} - a_{n-1} a_{n+2})^2`, exact; nonnegative iff the order-3
/// Turan inequality holds at `n`.
pub fn turan3_window(window: &[Integer]) -> ExactInt {
    assert_eq!(window.len(), 4, "Turan order 3 needs four consecutive values");
    let (am1, a0, a1, a2) = (&window[0], &window[1], &window[2], &window[3]);
    let f1 = (a0 * a0).complete() - (am1 * a1).complete();
    let f2 = (a1 * a1).complete() - (a0 * a2).complete();
    let cross = (a0 * a1).complete() - (am1 * a2).complete();
    Integer::from(4) * f1 * f2 - cross.square()
}

/// Turan order-3 value at index `n >= 1` of the table.
pub fn turan3_value(table: &SeqTable, n: u64) -> Result<ExactInt> {
    if n < 1 {
        return Err(Error::Range("Turan order 3 needs n >= 1".into()));
    }
    if n + 2 > table.n_max() {
        return Err(Error::Range(format!(
            "Turan window at n = {n} needs values through {}",
            n + 2
        )));
    }
    let w = &table.values()[(n - 1) as usize..=(n + 2) as usize];
    Ok(turan3_window(w))
}

/// Laguerre expression of order `m` at index `n`:
/// `(1/2) sum_{k=0}^{2m} (-1)^(m+k) binom(2m, k) a(n+k) a(n+2m-k)`, exact.
/// Order 1 collapses to the log-concavity operator.
pub fn laguerre_value(table: &SeqTable, m: u32, n: u64) -> Result<ExactRational> {
    assert!(m >= 1, "Laguerre order must be positive");
    if n + 2 * m as u64 > table.n_max() {
        return Err(Error::Range(format!(
            "Laguerre window at n = {n} needs values through {}",
            n + 2 * m as u64
        )));
    }
    let vals = table.values();
    let mut acc = Integer::new();
    for k in 0..=(2 * m) {
        let prod = (&vals[(n + k as u64) as usize] * &vals[(n + (2 * m - k) as u64) as usize])
            .complete();
        let b = integer_binomial(2 * m as i64, k as i64);
        debug_assert_eq!(*b.denom(), 1);
        let term = prod * b.numer();
        if (m + k) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(Rational::from((acc, Integer::from(2))))
}

/// Jensen polynomial `J^(d,n)(x) = sum_j binom(d, j) a(n+j) x^j` with exact
/// integer coefficients.
#[derive(Clone, Debug)]
pub struct JensenPoly {
    pub degree: u32,
    pub base_index: u64,
    pub poly: IntPoly,
}

pub fn jensen_poly(table: &SeqTable, degree: u32, base_index: u64) -> Result<JensenPoly> {
    assert!(degree >= 1);
    if base_index + degree as u64 > table.n_max() {
        return Err(Error::Range(format!(
            "Jensen polynomial at n = {base_index} needs values through {}",
            base_index + degree as u64
        )));
    }
    let vals = table.values();
    let coeffs: Vec<Integer> = (0..=degree)
        .map(|j| {
            let b = integer_binomial(degree as i64, j as i64);
            debug_assert_eq!(*b.denom(), 1);
            (&vals[(base_index + j as u64) as usize] * b.numer()).complete()
        })
        .collect();
    Ok(JensenPoly {
        degree,
        base_index,
        poly: IntPoly::new(coeffs),
    })
}

/// Which inequality a scan evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOp {
    /// Sign of the `r`-fold iterated log-concavity operator.
    RLogConcave(u32),
    /// Sign of the order-3 Turan expression.
    Turan3,
    /// Sign of the Laguerre expression of order `m`.
    Laguerre(u32),
    /// Hyperbolicity of the degree-`d` Jensen polynomial.
    Jensen(u32),
}

impl ScanOp {
    pub fn label(&self) -> String {
        match self {
            ScanOp::RLogConcave(1) => "logconcave".into(),
            ScanOp::RLogConcave(r) => format!("logconcave^{r}"),
            ScanOp::Turan3 => "turan3".into(),
            ScanOp::Laguerre(m) => format!("laguerre({m})"),
            ScanOp::Jensen(d) => format!("jensen({d})"),
        }
    }

    /// Index margin required beyond the scan range.
    pub fn lookahead(&self) -> u64 {
        match self {
            ScanOp::RLogConcave(r) => 2 * *r as u64,
            ScanOp::Turan3 => 2,
            ScanOp::Laguerre(m) => 2 * *m as u64,
            ScanOp::Jensen(d) => *d as u64,
        }
    }

    pub fn min_index(&self) -> u64 {
        match self {
            ScanOp::Turan3 => 1,
            _ => 0,
        }
    }
}

/// Result of scanning an inequality over an index range.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub operator: String,
    pub n_lo: u64,
    pub n_hi: u64,
    /// Indices where the inequality fails strictly (value < 0, or a
    /// non-hyperbolic Jensen polynomial).
    pub violations: Vec<u64>,
    /// Indices where the expression is exactly zero (counted separately;
    /// they satisfy the non-strict convention).
    pub zeros: Vec<u64>,
    /// Smallest `n` in range such that the inequality holds (>= 0) for all
    /// tested indices from `n` on; `None` if it fails at `n_hi` itself.
    pub all_hold_from: Option<u64>,
}

fn report_from_signs(op: &ScanOp, n_lo: u64, signs: Vec<(u64, i8)>) -> ScanReport {
    let n_hi = signs.last().map(|(n, _)| *n).unwrap_or(n_lo);
    let violations: Vec<u64> = signs.iter().filter(|(_, s)| *s < 0).map(|(n, _)| *n).collect();
    let zeros: Vec<u64> = signs.iter().filter(|(_, s)| *s == 0).map(|(n, _)| *n).collect();
    let all_hold_from = match violations.last() {
        None => Some(n_lo),
        Some(&last) if last == n_hi => None,
        Some(&last) => Some(last + 1),
    };
    ScanReport {
        operator: op.label(),
        n_lo,
        n_hi,
        violations,
        zeros,
        all_hold_from,
    }
}

/// Evaluate the scan operator sign at each index of `[n_lo, n_hi]`,
/// partitioning the range across worker threads and merging in range order.
pub fn scan(table: &SeqTable, op: ScanOp, n_lo: u64, n_hi: u64) -> Result<ScanReport> {
    let lo = n_lo.max(op.min_index());
    if lo > n_hi {
        return Err(Error::Range(format!("empty scan range [{n_lo}, {n_hi}]")));
    }
    if n_hi + op.lookahead() > table.n_max() {
        return Err(Error::Range(format!(
            "scan to {n_hi} needs values through {} (have {})",
            n_hi + op.lookahead(),
            table.n_max()
        )));
    }
    if let ScanOp::RLogConcave(r) = op {
        assert!(r >= 1, "iteration depth must be positive");
        // Iterating eagerly over the whole window is cheaper than windowed
        // recomputation for every index.
        let base = &table.values()[lo as usize..=(n_hi + 2 * r as u64) as usize];
        let mut level = base.to_vec();
        for _ in 0..r {
            level = iterate_log_concavity(&level);
        }
        let signs = level
            .iter()
            .enumerate()
            .map(|(i, v)| (lo + i as u64, v.cmp0() as i8))
            .collect();
        return Ok(report_from_signs(&op, lo, signs));
    }

    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(((n_hi - lo) / 64 + 1) as usize)
        .max(1);
    let chunk = (n_hi - lo) / workers as u64 + 1;
    let mut signs: Vec<(u64, i8)> = Vec::with_capacity((n_hi - lo + 1) as usize);
    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            let a = lo + w * chunk;
            let b = (a + chunk - 1).min(n_hi);
            if a > n_hi {
                break;
            }
            handles.push(scope.spawn(move || -> Result<Vec<(u64, i8)>> {
                let mut out = Vec::with_capacity((b - a + 1) as usize);
                for n in a..=b {
                    let s: i8 = match op {
                        ScanOp::Turan3 => turan3_value(table, n)?.cmp0() as i8,
                        ScanOp::Laguerre(m) => laguerre_value(table, m, n)?.cmp0() as i8,
                        ScanOp::Jensen(d) => {
                            if is_hyperbolic(&jensen_poly(table, d, n)?.poly) {
                                1
                            } else {
                                -1
                            }
                        }
                        ScanOp::RLogConcave(_) => unreachable!(),
                    };
                    out.push((n, s));
                }
                Ok(out)
            }));
        }
        for h in handles {
            signs.extend(h.join().expect("scan worker panicked")?);
        }
        Ok(())
    })?;
    signs.sort_unstable_by_key(|(n, _)| *n);
    Ok(report_from_signs(&op, lo, signs))
}

/// Ratio of the exact Laguerre value to the conjectured main term
/// `(2 pi)^m (2m-1)!! / (4 n^(3m/2)) * e^(8 pi sqrt n) / n^(27/2)`,
/// reported as a ball for each requested point.
pub fn conjecture_scan(
    table: &SeqTable,
    m: u32,
    points: &[u64],
) -> Result<Vec<(u64, Ball)>> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity(points.len());
    for &n in points {
        let exact = laguerre_value(table, m, n)?;
        let prec = default_precision(4 * n) + 64;
        let pi = pi_ball(prec);
        let two_pi = pi.mul(&Ball::from_u64(2, prec));
        let nb = Ball::from_u64(n, prec);
        let growth = pi
            .mul(&Ball::from_u64(8, prec))
            .mul(&nb.sqrt())
            .exp()
            .div(&nb.pow_rational(&Rational::from((27, 2))));
        let front = two_pi
            .pow_i64(m as i64)
            .mul(&Ball::from_integer(&odd_double_factorial(m), prec))
            .div(&Ball::from_u64(4, prec).mul(&nb.pow_rational(&Rational::from((3 * m as i64, 2)))));
        let conjectured = front.mul(&growth);
        let ratio = Ball::from_rational(&exact, prec).div(&conjectured);
        out.push((n, ratio));
    }
    Ok(out)
}
