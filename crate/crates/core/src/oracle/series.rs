//! Truncated Laurent series over a prime field `F_q`.
//!
//! A series stores coefficients for exponents `start..prec`. Everything at
//! or above `prec` is unknown, and products track how far precision
//! survives: `prec(fg) = min(prec(f) + ν(g), prec(g) + ν(f))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Checks that `q` is an odd prime small enough for `u64` products.
pub fn check_field(q: u64) -> Result<()> {
    if q % 2 == 0 || !is_prime(q) || q >= 1 << 31 {
        return Err(Error::Config(format!("residue field size must be an odd prime below 2^31, got {q}")));
    }
    Ok(())
}

pub fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, q: u64) -> u64 {
    debug_assert!(a % q != 0, "zero has no inverse");
    pow_mod(a, q - 2, q)
}

pub fn is_square_mod(a: u64, q: u64) -> bool {
    a % q == 0 || pow_mod(a, (q - 1) / 2, q) == 1
}

pub fn least_non_residue(q: u64) -> u64 {
    (2..q).find(|&a| !is_square_mod(a, q)).expect("odd primes have non-residues")
}

#[derive(Debug, Clone)]
pub struct TruncSeries {
    q: u64,
    start: i32,
    prec: i32,
    coeffs: Vec<u64>,
}

impl TruncSeries {
    /// `coeffs[k]` is the coefficient of `t^(start + k)`; entries at or past
    /// `prec` are dropped.
    pub fn from_coeffs(q: u64, start: i32, prec: i32, coeffs: &[i64]) -> Self {
        let len = (prec - start).max(0) as usize;
        let mut c = vec![0u64; len];
        for (k, v) in coeffs.iter().enumerate().take(len) {
            c[k] = v.rem_euclid(q as i64) as u64;
        }
        TruncSeries { q, start: start.min(prec), prec, coeffs: c }
    }

    pub fn zero(q: u64, prec: i32) -> Self {
        Self::from_coeffs(q, 0, prec, &[])
    }

    pub fn one(q: u64, prec: i32) -> Self {
        Self::monomial(q, prec, 1, 0)
    }

    pub fn constant(q: u64, prec: i32, c: i64) -> Self {
        Self::monomial(q, prec, c, 0)
    }

    /// `c t^e`.
    pub fn monomial(q: u64, prec: i32, c: i64, e: i32) -> Self {
        let mut s = Self::from_coeffs(q, e.min(0), prec, &[]);
        if e < prec {
            let k = (e - s.start) as usize;
            s.coeffs[k] = c.rem_euclid(q as i64) as u64;
        }
        s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn prec(&self) -> i32 {
        self.prec
    }

    pub fn coeff(&self, e: i32) -> u64 {
        if e < self.start || e >= self.prec {
            0
        } else {
            self.coeffs[(e - self.start) as usize]
        }
    }

    /// Least exponent with a nonzero coefficient; `None` if the series is
    /// zero to its precision.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.iter().position(|&c| c != 0).map(|k| self.start + k as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    fn lower_bound(&self) -> i32 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Does `ν(self) >= bound` hold, as far as the precision can tell?
    pub fn valuation_at_least(&self, bound: i64) -> bool {
        (self.start..self.prec)
            .take_while(|&e| (e as i64) < bound)
            .all(|e| self.coeff(e) == 0)
    }

    pub fn truncate(&self, prec: i32) -> Self {
        let p = prec.min(self.prec);
        let coeffs: Vec<i64> = (self.start..p).map(|e| self.coeff(e) as i64).collect();
        Self::from_coeffs(self.q, self.start, p, &coeffs)
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.q as i64) as u64;
        let mut s = self.clone();
        for v in s.coeffs.iter_mut() {
            *v = *v * c % self.q;
        }
        s
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: i32) -> Self {
        TruncSeries { q: self.q, start: self.start + e, prec: self.prec + e, coeffs: self.coeffs.clone() }
    }

    fn combine(&self, other: &Self, sign: u64) -> Self {
        assert_eq!(self.q, other.q, "series over different fields");
        let start = self.start.min(other.start);
        let prec = self.prec.min(other.prec);
        let coeffs: Vec<i64> = (start..prec)
            .map(|e| ((self.coeff(e) + sign * other.coeff(e)) % self.q) as i64)
            .collect();
        Self::from_coeffs(self.q, start, prec, &coeffs)
    }

    /// Inverse of a nonzero series, `t^-v` times the inverse of its unit part.
    pub fn inverse(&self) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::Contract("cannot invert a series that is zero to its precision".into()))?;
        let q = self.q;
        let len = (self.prec - v).max(0) as usize;
        let u: Vec<u64> = (0..len).map(|k| self.coeff(v + k as i32)).collect();
        let inv0 = inv_mod(u[0], q);
        let mut w = vec![0u64; len];
        w[0] = inv0;
        for k in 1..len {
            let s = (1..=k).fold(0u64, |acc, i| (acc + u[i] * w[k - i]) % q);
            w[k] = (q - s) % q * inv0 % q;
        }
        let coeffs: Vec<i64> = w.iter().map(|&c| c as i64).collect();
        Ok(Self::from_coeffs(q, -v, self.prec - 2 * v, &coeffs))
    }

    /// Square root `a` of a series `u ≡ 1 mod t`, with `a ≡ 1 mod t`,
    /// lifted one coefficient at a time.
    pub fn sqrt_principal_unit(&self) -> Result<Self> {
        let q = self.q;
        if self.start < 0 && (self.start..0).any(|e| self.coeff(e) != 0) || self.coeff(0) != 1 {
            return Err(Error::Contract("square root needs a series congruent to 1 mod t".into()));
        }
        let len = self.prec.max(0) as usize;
        let inv2 = inv_mod(2, q);
        let mut a = vec![0u64; len];
        if len > 0 {
            a[0] = 1;
        }
        for k in 1..len {
            let cross = (1..k).fold(0u64, |acc, i| (acc + a[i] * a[k - i]) % q);
            a[k] = (self.coeff(k as i32) + q - cross) % q * inv2 % q;
        }
        let coeffs: Vec<i64> = a.iter().map(|&c| c as i64).collect();
        Ok(Self::from_coeffs(q, 0, self.prec, &coeffs))
    }
}

/// Equal field, equal precision and equal known coefficients.
impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
            && self.prec == other.prec
            && (self.start.min(other.start)..self.prec).all(|e| self.coeff(e) == other.coeff(e))
    }
}

impl Eq for TruncSeries {}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, other: &TruncSeries) -> TruncSeries {
        self.combine(other, 1)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, other: &TruncSeries) -> TruncSeries {
        self.combine(other, self.q - 1)
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale(-1)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, other: &TruncSeries) -> TruncSeries {
        assert_eq!(self.q, other.q, "series over different fields");
        let q = self.q;
        let (va, vb) = (self.lower_bound(), other.lower_bound());
        let prec = (self.prec + vb).min(other.prec + va);
        let start = (va + vb).min(prec);
        let mut coeffs = vec![0u64; (prec - start).max(0) as usize];
        for i in va..self.prec {
            let a = self.coeff(i);
            if a == 0 {
                continue;
            }
            for j in vb..other.prec {
                let e = i + j;
                if e >= prec {
                    break;
                }
                let b = other.coeff(j);
                if b != 0 {
                    let k = (e - start) as usize;
                    coeffs[k] = (coeffs[k] + a * b) % q;
                }
            }
        }
        TruncSeries { q, start, prec, coeffs }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (self.start..self.prec)
            .filter(|&e| self.coeff(e) != 0)
            .map(|e| match e {
                0 => format!("{}", self.coeff(e)),
                1 => format!("{}t", self.coeff(e)),
                _ => format!("{}t^{e}", self.coeff(e)),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{body} + O(t^{})", self.prec)
    }
}
