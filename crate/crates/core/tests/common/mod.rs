//! Brute-force reference computations shared by the integration tests.
//!
//! Nothing here calls into the geometry code being tested except for the
//! plain data types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use toral::rational::{q, Rational};
use toral::roots::ApartmentPoint;

pub fn pt(c: &[(i64, i64)]) -> ApartmentPoint {
    ApartmentPoint::new(c.iter().map(|&(a, b)| q(a, b)).collect())
}

pub fn half_point(halves: &[i64]) -> ApartmentPoint {
    ApartmentPoint::new(halves.iter().map(|&h| q(h, 2)).collect())
}

/// Closes the simple roots under their own reflections.
pub fn reflection_closure(simple: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let mut all: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    loop {
        let mut new = Vec::new();
        for a in &all {
            for b in &all {
                // s_a(b) = b - 2(a,b)/(a,a) a
                let k = 2 * dot(a, b) / dot(a, a);
                let r: Vec<i64> = b.iter().zip(a).map(|(y, x)| y - k * x).collect();
                if !all.contains(&r) {
                    new.push(r);
                }
            }
        }
        if new.is_empty() {
            return all;
        }
        all.extend(new);
    }
}

/// Simple roots of C_n: e_i - e_{i+1}, then 2 e_n.
pub fn c_simple_roots(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut r = vec![0; n];
        r[i] = 1;
        r[i + 1] = -1;
        out.push(r);
    }
    let mut r = vec![0; n];
    r[n - 1] = 2;
    out.push(r);
    out
}

/// Simple roots of SL_n in R^n: e_i - e_{i+1}.
pub fn a_simple_roots(n: usize) -> Vec<Vec<i64>> {
    (0..n - 1)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r[i + 1] = -1;
            r
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All points of (1/2 Z)^n with every coordinate in [lo, hi] (in halves).
pub fn half_grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |h| {
                    let mut p = p.clone();
                    p.push(h);
                    p
                })
            })
            .collect();
    }
    out
}

/// Number of odd entries of a vertex written in halves.
pub fn half_count(halves: &[i64]) -> usize {
    halves.iter().filter(|h| h.rem_euclid(2) == 1).count()
}

/// Tokens: 'h' = u½, 'r' = ramified, '0' = u0. Fixed set of each factor
/// in halves: {1}, {0, 1}, {0}.
pub fn in_fixed_box(kinds: &[char], halves: &[i64]) -> bool {
    kinds.iter().zip(halves).all(|(k, &h)| match k {
        'h' => h == 1,
        'r' => h == 0 || h == 1,
        _ => h == 0,
    })
}

pub fn spec_text(m: usize, l: usize, n0: usize) -> String {
    let mut parts = Vec::new();
    if m > 0 {
        parts.push(format!("u½^{m}"));
    }
    if l > 0 {
        parts.push(format!("r^{l}"));
    }
    if n0 > 0 {
        parts.push(format!("u0^{n0}"));
    }
    parts.join(" ")
}

pub fn kinds(m: usize, l: usize, n0: usize) -> Vec<char> {
    let mut k = vec!['h'; m];
    k.extend(vec!['r'; l]);
    k.extend(vec!['0'; n0]);
    k
}

/// All (m, l, n - m - l) with n in 1..=max_n.
pub fn all_specs(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for m in 0..=n {
            for l in 0..=n - m {
                out.push((m, l, n - m - l));
            }
        }
    }
    out
}

/// Rationals in [lo, hi] with denominator at most `d`.
pub fn farey_between(lo: Rational, hi: Rational, d: i64) -> Vec<Rational> {
    let mut v: BTreeSet<Rational> = BTreeSet::new();
    for den in 1..=d {
        for num in -4 * den..=4 * den {
            let r = q(num, den);
            if r >= lo && r <= hi {
                v.insert(r);
            }
        }
    }
    v.into_iter().collect()
}

/// Points of a rectangular grid with spacing 1/den covering [lo, hi]^n.
pub fn rational_grid(lo: &[Rational], hi: &[Rational], den: i64) -> Vec<ApartmentPoint> {
    let mut out = vec![vec![]];
    for (a, b) in lo.iter().zip(hi) {
        let start = (a * den).ceil().to_integer();
        let end = (b * den).floor().to_integer();
        out = out
            .into_iter()
            .flat_map(|p: Vec<Rational>| {
                (start..=end).map(move |k| {
                    let mut p = p.clone();
                    p.push(q(k, den));
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(ApartmentPoint::new).collect()
}
