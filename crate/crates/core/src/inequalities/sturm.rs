//! Exact real-root counting for integer polynomials via Sturm sequences
//! (pseudo-remainders with sign tracking), and the hyperbolicity decision.

use rug::{Complete, Integer};
use std::cmp::Ordering;

/// Dense integer polynomial, coefficients in ascending degree order.
/// Trailing zeros are stripped; the zero polynomial has an empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::new(vec![]);
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Integer::from(i) * c)
                .collect(),
        )
    }

    /// Content (gcd of coefficients), positive.
    fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the content, preserving signs.
    fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c / &g).complete())
                .collect(),
        )
    }

    fn scale(&self, k: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| (c * k).complete()).collect())
    }

    fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Integer::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::new(out)
    }

    fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![Integer::new(); k];
        out.extend(self.coeffs.iter().cloned());
        IntPoly::new(out)
    }

    /// Pseudo-remainder: returns `r` with `lc(g)^(deg f - deg g + 1) f = q g + r`.
    fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        assert!(!g.is_zero());
        let mut r = self.clone();
        let dg = g.degree();
        let lc_g = g.leading().unwrap().clone();
        while !r.is_zero() && r.degree() >= dg {
            let dr = r.degree();
            let lead = r.leading().unwrap().clone();
            r = r.scale(&lc_g).sub(&g.scale(&lead).shift_up(dr - dg));
            debug_assert!(r.is_zero() || r.degree() < dr);
        }
        r
    }

    /// Polynomial gcd over Z (primitive, positive leading coefficient).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|l| *l < 0) {
            a = a.scale(&Integer::from(-1));
        }
        a
    }

    /// Exact quotient `self / divisor` (panics if not exact); used for the
    /// squarefree part where divisibility is guaranteed.
    fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero());
        // Rational long division, then clear: since divisor | self over Q and
        // both are integer polynomials with divisor primitive, the quotient
        // has integer coefficients up to the content of self.
        use rug::Rational;
        let mut rem: Vec<Rational> = self.coeffs.iter().map(Rational::from).collect();
        let dd = divisor.degree();
        let lc = Rational::from(divisor.leading().unwrap());
        let dq = self.degree() - dd;
        let mut q = vec![Rational::new(); dq + 1];
        for i in (0..=dq).rev() {
            let top = rem[i + dd].clone();
            if top == 0 {
                continue;
            }
            let f = top / lc.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let sub = f.clone() * c;
                rem[i + j] -= sub;
            }
            q[i] = f;
        }
        assert!(rem.iter().all(|c| *c == 0), "division not exact");
        // Clear denominators.
        let mut lcm = Integer::from(1);
        for c in &q {
            lcm = lcm.lcm(c.denom());
        }
        IntPoly::new(
            q.iter()
                .map(|c| {
                    let v = c.clone() * Rational::from(&lcm);
                    debug_assert_eq!(*v.denom(), 1);
                    v.numer().clone()
                })
                .collect(),
        )
    }

    /// Squarefree part `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() <= 1 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.primitive()
        } else {
            self.exact_div(&g).primitive()
        }
    }

    fn sign_at_pos_inf(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(l) => match l.cmp0() {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            },
        }
    }

    fn sign_at_neg_inf(&self) -> i8 {
        let s = self.sign_at_pos_inf();
        if self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }
}

/// Sturm sequence of a squarefree polynomial: pseudo-remainders with the
/// multiplier sign tracked so that each element keeps the sign of the true
/// rational remainder sequence.
fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let (f, g) = (&seq[n - 2], &seq[n - 1]);
        if g.is_zero() {
            seq.pop();
            break;
        }
        if f.degree() < g.degree() {
            // derivative of a constant; nothing to do
            break;
        }
        let delta = f.degree() - g.degree();
        let lc_g = g.leading().unwrap();
        // multiplier is lc(g)^(delta+1): negative iff lc(g) < 0 and delta even
        let mult_negative = *lc_g < 0 && delta % 2 == 0;
        let mut r = f.pseudo_rem(g).primitive();
        if r.is_zero() {
            break;
        }
        // next element is -(f mod g) up to positive scaling
        if !mult_negative {
            r = r.scale(&Integer::from(-1));
        }
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of a squarefree polynomial over all of R.
pub fn count_real_roots_squarefree(p: &IntPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    let at_neg = variations(seq.iter().map(|q| q.sign_at_neg_inf()));
    let at_pos = variations(seq.iter().map(|q| q.sign_at_pos_inf()));
    at_neg - at_pos
}

/// Whether all complex roots of the (nonzero) polynomial are real, decided
/// exactly: the squarefree part must have as many distinct real roots as
/// its degree.
pub fn is_hyperbolic(p: &IntPoly) -> bool {
    assert!(!p.is_zero(), "hyperbolicity of the zero polynomial is undefined");
    let sf = p.squarefree_part();
    if sf.degree() <= 1 {
        return true;
    }
    count_real_roots_squarefree(&sf) == sf.degree()
}
