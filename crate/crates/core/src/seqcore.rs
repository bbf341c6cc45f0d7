//! Exact computation and caching of k-colored partition numbers `p_k(n)`,
//! the ground-truth oracle for everything else.
//!
//! The production path is the divisor-sum recurrence
//! `n p_k(n) = k * sum_{m=1..n} sigma(m) p_k(n-m)` obtained from the
//! logarithmic derivative of the generating product; the test oracle
//! multiplies the product out by repeated geometric-series convolution and
//! shares no code with the recurrence.

use crate::error::{Error, Result};
use crate::numerics::ExactInt;
use rug::{Complete, Integer};
use std::io::{Read, Write};

/// Hard ceiling on table length; the recurrence is quadratic and entries
/// near 10^6 would hold ~0.5 GB of digits.
const DEFAULT_MAX_LEN: u64 = 2_000_000;

/// Oracle budget: the convolution path is for cross-validation only.
pub const ORACLE_BUDGET: u64 = 5_000;

/// Divisor sum `sigma(n)` by direct divisor enumeration.
pub fn sigma(n: u64) -> ExactInt {
    assert!(n >= 1, "sigma requires n >= 1");
    let mut total: u64 = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += d;
            let q = n / d;
            if q != d {
                total += q;
            }
        }
        d += 1;
    }
    Integer::from(total)
}

/// Cached table of exact `p_k(0..=n_max)` values.
#[derive(Clone, Debug)]
pub struct SeqTable {
    colors: u32,
    values: Vec<Integer>,
    sigma_table: Vec<u64>, // sigma_table[m] = sigma(m), index 0 unused
    max_len: u64,
}

impl SeqTable {
    /// Empty table holding only `p_k(0) = 1`.
    pub fn new(colors: u32) -> Self {
        assert!(colors >= 1, "color count must be positive");
        SeqTable {
            colors,
            values: vec![Integer::from(1)],
            sigma_table: vec![0, 1],
            max_len: DEFAULT_MAX_LEN,
        }
    }

    pub fn with_max_len(colors: u32, max_len: u64) -> Self {
        let mut t = Self::new(colors);
        t.max_len = max_len;
        t
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    /// Largest index currently materialized.
    pub fn n_max(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// Extend the table so that all of `p_k(0..=n_max)` is materialized.
    /// Idempotent for an already-covered range; existing entries never change.
    pub fn extend(&mut self, n_max: u64) -> Result<()> {
        if n_max.saturating_add(1) > self.max_len {
            return Err(Error::ResourceLimit(format!(
                "table of {} entries exceeds budget {}",
                n_max + 1,
                self.max_len
            )));
        }
        self.extend_sigma(n_max);
        let k = self.colors;
        while self.n_max() < n_max {
            let n = self.values.len() as u64;
            let mut acc = Integer::new();
            for m in 1..=n {
                // acc += sigma(m) * p_k(n - m)
                acc += (&self.values[(n - m) as usize] * self.sigma_table[m as usize]).complete();
            }
            acc *= k;
            let (q, r) = acc.div_rem(Integer::from(n));
            debug_assert!(r == 0, "recurrence must divide exactly");
            self.values.push(q);
        }
        Ok(())
    }

    fn extend_sigma(&mut self, n_max: u64) {
        let want = (n_max + 1) as usize;
        if self.sigma_table.len() >= want {
            return;
        }
        // Divisor sieve, recomputed from scratch on growth; O(n log n).
        let mut table = vec![0u64; want.max(2)];
        for d in 1..want {
            let mut m = d;
            while m < want {
                table[m] += d as u64;
                m += d;
            }
        }
        self.sigma_table = table;
    }

    /// Exact `p_k(n)`; extends the table if needed.
    pub fn value(&mut self, n: u64) -> Result<&Integer> {
        if n > self.n_max() {
            self.extend(n)?;
        }
        Ok(&self.values[n as usize])
    }

    /// Exact `p_k(n)` without extension.
    pub fn get(&self, n: u64) -> Result<&Integer> {
        self.values.get(n as usize).ok_or_else(|| {
            Error::Range(format!("p_{}({n}) not materialized (have 0..={})", self.colors, self.n_max()))
        })
    }

    /// Materialized prefix as a slice.
    pub fn values(&self) -> &[Integer] {
        &self.values
    }

    /// Write `n,p_k` CSV lines for `lo..=hi` with exact decimal integers.
    pub fn write_csv<W: Write>(&self, mut w: W, lo: u64, hi: u64) -> Result<()> {
        if hi > self.n_max() {
            return Err(Error::Range(format!(
                "csv range {lo}..={hi} exceeds table ({})",
                self.n_max()
            )));
        }
        for n in lo..=hi {
            writeln!(w, "{},{}", n, self.values[n as usize])?;
        }
        Ok(())
    }

    /// Binary cache format: header `{format_version, k, n_max}` then each
    /// value as a little-endian length-prefixed magnitude (all values here
    /// are positive).
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(b"P24C")?;
        w.write_all(&CACHE_FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&self.colors.to_le_bytes())?;
        w.write_all(&self.n_max().to_le_bytes())?;
        for v in &self.values {
            let digits = v.to_digits::<u8>(rug::integer::Order::Lsf);
            w.write_all(&(digits.len() as u32).to_le_bytes())?;
            w.write_all(&digits)?;
        }
        Ok(())
    }

    pub fn read_cache<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != b"P24C" {
            return Err(Error::Format("bad cache magic".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != CACHE_FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported cache version {version}")));
        }
        r.read_exact(&mut b4)?;
        let colors = u32::from_le_bytes(b4);
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)?;
        let n_max = u64::from_le_bytes(b8);
        let mut values = Vec::with_capacity((n_max + 1) as usize);
        for _ in 0..=n_max {
            r.read_exact(&mut b4)?;
            let len = u32::from_le_bytes(b4) as usize;
            let mut digits = vec![0u8; len];
            r.read_exact(&mut digits)?;
            values.push(Integer::from_digits(&digits, rug::integer::Order::Lsf));
        }
        if values.is_empty() || values[0] != 1 {
            return Err(Error::Format("cache must start with p_k(0) = 1".into()));
        }
        let mut t = SeqTable::new(colors);
        t.values = values;
        Ok(t)
    }
}

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Independent oracle: expand `prod_{j<=n_max} (1 - q^j)^{-k}` by `k`-fold
/// repeated geometric-series convolution, truncated at degree `n_max`.
/// Shares no code path with [`SeqTable::extend`].
pub fn convolution_oracle(colors: u32, n_max: u64) -> Result<Vec<ExactInt>> {
    if n_max > ORACLE_BUDGET {
        return Err(Error::ResourceLimit(format!(
            "oracle budget is {ORACLE_BUDGET}, requested {n_max}"
        )));
    }
    let len = (n_max + 1) as usize;
    let mut series = vec![Integer::new(); len];
    series[0] = Integer::from(1);
    for part in 1..len {
        for _ in 0..colors {
            // Multiply by 1/(1 - q^part): running prefix sum with stride.
            for i in part..len {
                let (head, tail) = series.split_at_mut(i);
                tail[0] += &head[i - part];
            }
        }
    }
    Ok(series)
}
