//! `2n x 2n` matrices over truncated series, the symplectic form
//! `J = [[0, I], [-I, 0]]`, and parahoric valuation patterns.

use std::fmt;

use num_traits::Signed;

use super::series::TruncSeries;
use crate::error::{contract, Result};
use crate::rational::{ceil_int, dot_int, Rational};
use crate::roots::ApartmentPoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<TruncSeries>,
}

impl LaurentMatrix {
    pub fn zero(size: usize, q: u64, prec: i32) -> Self {
        LaurentMatrix { size, entries: vec![TruncSeries::zero(q, prec); size * size] }
    }

    pub fn identity(size: usize, q: u64, prec: i32) -> Self {
        let mut m = Self::zero(size, q, prec);
        for i in 0..size {
            m.set(i, i, TruncSeries::one(q, prec));
        }
        m
    }

    pub fn from_int(rows: &[Vec<i64>], q: u64, prec: i32) -> Self {
        let size = rows.len();
        let mut m = Self::zero(size, q, prec);
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                m.set(i, j, TruncSeries::constant(q, prec, c));
            }
        }
        m
    }

    /// `J` for `Sp_{2n}`.
    pub fn symplectic_form(n: usize, q: u64, prec: i32) -> Self {
        let mut m = Self::zero(2 * n, q, prec);
        for i in 0..n {
            m.set(i, i + n, TruncSeries::one(q, prec));
            m.set(i + n, i, TruncSeries::constant(q, prec, -1));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &TruncSeries {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TruncSeries) {
        self.entries[i * self.size + j] = v;
    }

    pub fn q(&self) -> u64 {
        self.entries[0].q()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix size mismatch");
        let s = self.size;
        let mut out = Vec::with_capacity(s * s);
        for i in 0..s {
            for j in 0..s {
                let mut acc: Option<TruncSeries> = None;
                for k in 0..s {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    acc = Some(match acc {
                        None => p,
                        Some(x) => &x + &p,
                    });
                }
                out.push(acc.unwrap_or_else(|| {
                    let prec = (0..s).map(|k| self.get(i, k).prec().min(other.get(k, j).prec())).min().unwrap_or(0);
                    TruncSeries::zero(self.q(), prec)
                }));
            }
        }
        LaurentMatrix { size: s, entries: out }
    }

    pub fn transpose(&self) -> Self {
        let s = self.size;
        let mut m = self.clone();
        for i in 0..s {
            for j in 0..s {
                m.set(i, j, self.get(j, i).clone());
            }
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        LaurentMatrix { size: self.size, entries }
    }

    fn form(&self) -> Self {
        let prec = self.entries.iter().map(|e| e.prec()).max().unwrap_or(0);
        Self::symplectic_form(self.size / 2, self.q(), prec)
    }

    /// `g^-1 = -J ᵗg J`, valid for symplectic `g`.
    pub fn symplectic_inverse(&self) -> Self {
        let j = self.form();
        let m = j.mul(&self.transpose()).mul(&j);
        LaurentMatrix { size: self.size, entries: m.entries.iter().map(|e| -e).collect() }
    }

    /// `h g h^-1` for symplectic `h`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.mul(self).mul(&h.symplectic_inverse())
    }

    /// Is `ᵗg J g - J` zero modulo `t^modulus`?
    pub fn is_symplectic_mod(&self, modulus: i32) -> bool {
        if self.size % 2 != 0 {
            return false;
        }
        let j = self.form();
        let d = self.transpose().mul(&j).mul(self).sub(&j);
        d.entries.iter().all(|e| e.valuation_at_least(modulus as i64))
    }

    pub fn min_prec(&self) -> i32 {
        self.entries.iter().map(|e| e.prec()).min().unwrap_or(0)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Torus weight of basis vector `i` of the standard representation:
/// `ε_i` for `i < n` and `-ε_{i-n}` after.
pub fn weight(n: usize, i: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    if i < n {
        w[i] = 1;
    } else {
        w[i - n] = -1;
    }
    w
}

/// The character by which the diagonal torus acts on the elementary matrix
/// `E_ij` under conjugation: `weight(i) - weight(j)`.
pub fn entry_root(n: usize, i: usize, j: usize) -> Vec<i64> {
    weight(n, i).iter().zip(weight(n, j)).map(|(a, b)| a - b).collect()
}

/// Positions `(i, j)` whose entry carries `root`.
pub fn root_positions(n: usize, root: &[i64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..2 * n {
        for j in 0..2 * n {
            if i != j && entry_root(n, i, j) == root {
                out.push((i, j));
            }
        }
    }
    out
}

/// Entrywise valuation bounds. At depth 0 membership means
/// `ν(g_ij) >= bounds[i][j]`. At positive depth the diagonal is tested as
/// `ν(g_ii - 1) >= bounds[i][i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationPattern {
    pub bounds: Vec<Vec<i64>>,
    pub depth: Rational,
}

impl ValuationPattern {
    pub fn size(&self) -> usize {
        self.bounds.len()
    }

    /// `O`, `p`, `p^k` grid.
    pub fn symbols(&self) -> Vec<Vec<String>> {
        self.bounds
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&b| match b {
                        0 => "O".to_string(),
                        1 => "p".to_string(),
                        b => format!("p^{b}"),
                    })
                    .collect()
            })
            .collect()
    }

    /// First position violating the pattern, with the entry's valuation.
    pub fn first_violation(&self, g: &LaurentMatrix) -> Option<(usize, usize, Option<i32>, i64)> {
        let s = self.size();
        let unipotent = self.depth.is_positive();
        for i in 0..s {
            for j in 0..s {
                let bound = self.bounds[i][j];
                let entry = if unipotent && i == j {
                    g.get(i, j) - &TruncSeries::one(g.q(), g.get(i, j).prec())
                } else {
                    g.get(i, j).clone()
                };
                if !entry.valuation_at_least(bound) {
                    return Some((i, j, entry.valuation(), bound));
                }
            }
        }
        None
    }
}

impl fmt::Display for ValuationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.symbols() {
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The Moy-Prasad group `G_{z,r}` of `Sp_{2n}` as a valuation pattern:
/// the entry carrying root `α` needs valuation `>= ceil(r - α(z))`.
pub fn parahoric_pattern(z: &ApartmentPoint, n: usize, r: Rational) -> Result<ValuationPattern> {
    contract!(!r.is_negative(), "depth must be >= 0, got {r}");
    contract!(z.dim() == n, "point {z} is not in the apartment of Sp_{}", 2 * n);
    let bounds = (0..2 * n)
        .map(|i| (0..2 * n).map(|j| ceil_int(&(r - dot_int(&entry_root(n, i, j), z.coords())))).collect())
        .collect();
    Ok(ValuationPattern { bounds, depth: r })
}

/// Entrywise membership of a symplectic matrix. Precision slack is 2: the
/// matrix must be symplectic modulo `t^(N-2)`.
pub fn in_parahoric(g: &LaurentMatrix, pattern: &ValuationPattern) -> Result<bool> {
    contract!(g.size() == pattern.size(), "matrix and pattern sizes differ");
    let modulus = g.min_prec() - super::SLACK;
    contract!(g.is_symplectic_mod(modulus), "matrix is not symplectic modulo t^{modulus}");
    Ok(pattern.first_violation(g).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn pt(c: &[(i64, i64)]) -> ApartmentPoint {
        ApartmentPoint::new(c.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn entry_roots() {
        assert_eq!(entry_root(2, 0, 1), vec![1, -1]);
        assert_eq!(entry_root(2, 0, 2), vec![2, 0]);
        assert_eq!(entry_root(2, 2, 3), vec![-1, 1]);
        assert_eq!(root_positions(2, &[1, 1]), vec![(0, 3), (1, 2)]);
        assert_eq!(root_positions(2, &[1, -1]), vec![(0, 1), (3, 2)]);
    }

    #[test]
    fn origin_pattern_is_integral() {
        let p = parahoric_pattern(&pt(&[(0, 1)]), 1, Rational::from_integer(0)).unwrap();
        assert_eq!(p.bounds, vec![vec![0, 0], vec![0, 0]]);
        assert!(parahoric_pattern(&pt(&[(0, 1)]), 1, q(-1, 2)).is_err());
    }

    #[test]
    fn identity_and_inverse() {
        let id = LaurentMatrix::identity(4, 3, 8);
        let p = parahoric_pattern(&pt(&[(1, 3), (1, 6)]), 2, q(0, 1)).unwrap();
        assert!(in_parahoric(&id, &p).unwrap());
        let w = LaurentMatrix::from_int(
            &[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]],
            3,
            8,
        );
        assert!(w.is_symplectic_mod(8));
        assert_eq!(w.mul(&w.symplectic_inverse()), id);
        let bad = LaurentMatrix::from_int(&[vec![2, 0], vec![0, 1]], 3, 8);
        assert!(in_parahoric(&bad, &parahoric_pattern(&pt(&[(0, 1)]), 1, q(0, 1)).unwrap()).is_err());
    }
}
