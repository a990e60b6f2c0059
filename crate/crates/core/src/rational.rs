//! Exact rational scalars.
//!
//! Everything geometric in this crate is computed over `Q`. The backing
//! integer is `i64`; the workspace forces overflow checks on in every
//! profile, so an overflow aborts loudly instead of wrapping.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Least integer `>= r`.
pub fn ceil_int(r: &Rational) -> i64 {
    r.ceil().to_integer()
}

/// Greatest integer `<= r`.
pub fn floor_int(r: &Rational) -> i64 {
    r.floor().to_integer()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}, expected p/q"));
    let (p, d) = match s.split_once('/') {
        Some((p, d)) => (p.trim(), d.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, d))
}

/// Always `p/q` with `q >= 1`, so `1` is written `1/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human form: `1/2`, `-3`, `0`.
pub fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_vector(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Err(Error::Parse("empty coordinate list".into()));
    }
    s.split(',').map(parse_rational).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[i64], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(c, _)| **c != 0)
        .map(|(c, y)| y * *c)
        .sum()
}

pub fn to_rational_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| int(c)).collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rational]) -> i64 {
    v.iter().fold(1i64, |acc, r| acc.lcm(r.denom()))
}

pub fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod serde_pq {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/5").unwrap(), q(3, 5));
        assert_eq!(parse_rational(" -2/4 ").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(1)), "1/1");
        assert_eq!(format_rational(&q(-1, 2)), "-1/2");
        assert_eq!(display_rational(&int(0)), "0");
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_int(&q(-1, 6)), 0);
        assert_eq!(ceil_int(&q(1, 6)), 1);
        assert_eq!(ceil_int(&q(-2, 3)), 0);
        assert_eq!(ceil_int(&int(-1)), -1);
        assert_eq!(floor_int(&q(-1, 2)), -1);
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("1/4,1/4").unwrap(), vec![q(1, 4), q(1, 4)]);
        assert_eq!(parse_vector("(1/2, 0)").unwrap(), vec![q(1, 2), int(0)]);
        assert_eq!(common_denominator(&[q(1, 4), q(1, 6)]), 12);
    }
}
