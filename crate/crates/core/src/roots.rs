//! Finite and affine root systems of types `A_{n-1}` and `C_n`.
//!
//! Type `C_n` lives in `Q^n` with coordinates in the basis `e_1..e_n` dual
//! to `ε_1..ε_n`; roots are `±ε_i ± ε_j` and `±2ε_i`, and the fundamental
//! alcove has vertices `v_i = (1/2, .., 1/2, 0, .., 0)` (first `i`
//! coordinates one half).
//!
//! Type `A_{n-1}` (the group `SL_n`) lives in the trace-zero hyperplane of
//! `Q^n`; roots are `ε_i - ε_j` and the alcove vertices are the fundamental
//! coweights `ω_0 = 0, ω_1, .., ω_{n-1}`.
//!
//! Affine roots are `α + k` with `k ∈ Z` for every root `α`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::rational::{self, dot_int, int, q, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => f.write_str("A"),
            Family::C => f.write_str("C"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "C" | "c" => Ok(Family::C),
            other => Err(Error::Config(format!("unsupported root system family {other:?}"))),
        }
    }
}

/// An integer covector in the ε-basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn pair(&self, z: &ApartmentPoint) -> Rational {
        dot_int(&self.0, z.coords())
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// Positive for the simple systems used here iff the first nonzero
    /// coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|c| **c != 0).is_some_and(|c| *c > 0)
    }

    /// `2α/(α,α)` under the standard pairing; integral for types A and C.
    pub fn coroot(&self) -> Vec<i64> {
        let norm: i64 = self.0.iter().map(|c| c * c).sum();
        self.0.iter().map(|c| 2 * c / norm).collect()
    }

    pub fn as_rational(&self) -> Vec<Rational> {
        rational::to_rational_vec(&self.0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}e{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}e{}", i + 1)?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A point of the standard apartment, with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApartmentPoint(Vec<Rational>);

impl ApartmentPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &ApartmentPoint) -> Vec<Rational> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn add_scaled(&self, dir: &[Rational], t: Rational) -> ApartmentPoint {
        ApartmentPoint(self.0.iter().zip(dir).map(|(a, d)| a + *d * t).collect())
    }

    /// Average of a nonempty point set.
    pub fn barycentre(points: &[ApartmentPoint]) -> ApartmentPoint {
        let k = int(points.len() as i64);
        let dim = points[0].dim();
        let coords = (0..dim)
            .map(|i| points.iter().map(|p| p.0[i]).sum::<Rational>() / k)
            .collect();
        ApartmentPoint(coords)
    }
}

impl fmt::Display for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&rational::display_rational(c))?;
        }
        f.write_str(")")
    }
}

impl FromStr for ApartmentPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        rational::parse_vector(s).map(ApartmentPoint)
    }
}

impl Serialize for ApartmentPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&rational::format_rational(c))?;
        }
        seq.end()
    }
}

/// The function `z ↦ gradient(z) + offset` on the apartment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineRoot {
    pub gradient: Root,
    pub offset: i64,
}

impl AffineRoot {
    pub fn new(gradient: Root, offset: i64) -> Self {
        Self { gradient, offset }
    }

    pub fn eval(&self, z: &ApartmentPoint) -> Rational {
        self.gradient.pair(z) + int(self.offset)
    }

    /// Reflection in the wall `{ψ = 0}`.
    pub fn reflect(&self, z: &ApartmentPoint) -> ApartmentPoint {
        let value = self.eval(z);
        let coroot = self.gradient.coroot();
        ApartmentPoint(
            z.0.iter()
                .zip(&coroot)
                .map(|(c, k)| c - value * int(*k))
                .collect(),
        )
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.offset.cmp(&0) {
            std::cmp::Ordering::Equal => write!(f, "{}", self.gradient),
            std::cmp::Ordering::Greater => write!(f, "{}+{}", self.gradient, self.offset),
            std::cmp::Ordering::Less => write!(f, "{}{}", self.gradient, self.offset),
        }
    }
}

/// Evaluates an affine root with a dimension check.
pub fn eval_affine(psi: &AffineRoot, z: &ApartmentPoint) -> Result<Rational> {
    contract!(
        psi.gradient.0.len() == z.dim(),
        "affine root has {} coordinates, point has {}",
        psi.gradient.0.len(),
        z.dim()
    );
    Ok(psi.eval(z))
}

/// A word in the affine simple reflections, recorded in application order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, z: &ApartmentPoint, rd: &RootDatum) -> ApartmentPoint {
        let simple = rd.affine_simple_roots();
        self.0.iter().fold(z.clone(), |p, &j| simple[j].reflect(&p))
    }

    pub fn apply_inverse(&self, z: &ApartmentPoint, rd: &RootDatum) -> ApartmentPoint {
        let simple = rd.affine_simple_roots();
        self.0.iter().rev().fold(z.clone(), |p, &j| simple[j].reflect(&p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    roots: Vec<Root>,
    simple_roots: Vec<Root>,
    long_roots: Vec<Root>,
    affine_simple: Vec<AffineRoot>,
    alcove_vertices: Vec<ApartmentPoint>,
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

/// Builds the root datum of `C_n` (`n >= 1`) or of `SL_n` (`n >= 2`).
pub fn build_root_datum(family: Family, n: usize) -> Result<RootDatum> {
    match family {
        Family::C if n >= 1 => Ok(type_c(n)),
        Family::A if n >= 2 => Ok(type_a(n)),
        Family::C => Err(Error::Config("type C needs rank n >= 1".into())),
        Family::A => Err(Error::Config("type A needs n >= 2 (SL_n)".into())),
    }
}

fn type_c(n: usize) -> RootDatum {
    let mut roots = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        roots.push(Root(unit(n, i, 2)));
        roots.push(Root(unit(n, i, -2)));
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0; n];
                v[i] = si;
                v[j] = sj;
                roots.push(Root(v));
            }
        }
    }
    roots.sort();
    let long_roots: Vec<Root> = roots
        .iter()
        .filter(|r| r.0.iter().any(|c| c.abs() == 2))
        .cloned()
        .collect();

    let mut simple_roots: Vec<Root> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            Root(v)
        })
        .collect();
    simple_roots.push(Root(unit(n, n - 1, 2)));

    // a_0 = 1 - 2ε_1, then the finite simple roots in order.
    let mut affine_simple = vec![AffineRoot::new(Root(unit(n, 0, -2)), 1)];
    affine_simple.extend(simple_roots.iter().map(|r| AffineRoot::new(r.clone(), 0)));

    let alcove_vertices = (0..=n)
        .map(|i| {
            ApartmentPoint(
                (0..n)
                    .map(|j| if j < i { q(1, 2) } else { Rational::zero() })
                    .collect(),
            )
        })
        .collect();

    RootDatum {
        family: Family::C,
        rank: n,
        roots,
        simple_roots,
        long_roots,
        affine_simple,
        alcove_vertices,
    }
}

fn type_a(n: usize) -> RootDatum {
    let mut roots = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                roots.push(Root(v));
            }
        }
    }
    roots.sort();
    let simple_roots: Vec<Root> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            Root(v)
        })
        .collect();
    let mut highest = vec![0; n];
    highest[0] = 1;
    highest[n - 1] = -1;
    let mut affine_simple = vec![AffineRoot::new(Root(highest).neg(), 1)];
    affine_simple.extend(simple_roots.iter().map(|r| AffineRoot::new(r.clone(), 0)));

    let alcove_vertices = (0..n)
        .map(|k| {
            let shift = q(k as i64, n as i64);
            ApartmentPoint(
                (0..n)
                    .map(|j| if j < k { int(1) - shift } else { -shift })
                    .collect(),
            )
        })
        .collect();

    RootDatum {
        family: Family::A,
        rank: n,
        roots,
        simple_roots,
        long_roots: Vec::new(),
        affine_simple,
        alcove_vertices,
    }
}

impl RootDatum {
    pub fn family(&self) -> Family {
        self.family
    }

    /// The `n` of `C_n` or of `SL_n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of coordinates of an apartment point.
    pub fn ambient_dim(&self) -> usize {
        self.rank
    }

    /// Dimension of the apartment itself.
    pub fn apartment_dim(&self) -> usize {
        match self.family {
            Family::C => self.rank,
            Family::A => self.rank - 1,
        }
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    pub fn long_roots(&self) -> &[Root] {
        &self.long_roots
    }

    /// `a_0, a_1, .., a_r`; `a_j` is nonzero exactly at alcove vertex `j`.
    pub fn affine_simple_roots(&self) -> &[AffineRoot] {
        &self.affine_simple
    }

    pub fn alcove_vertices(&self) -> &[ApartmentPoint] {
        &self.alcove_vertices
    }

    /// Linear equalities every apartment point satisfies (trace zero for
    /// type A), as integer covectors with right-hand side 0.
    pub fn ambient_equalities(&self) -> Vec<Vec<i64>> {
        match self.family {
            Family::C => Vec::new(),
            Family::A => vec![vec![1; self.rank]],
        }
    }

    pub fn contains_point(&self, z: &ApartmentPoint) -> bool {
        z.dim() == self.ambient_dim()
            && self
                .ambient_equalities()
                .iter()
                .all(|e| dot_int(e, z.coords()).is_zero())
    }

    pub fn check_point(&self, z: &ApartmentPoint) -> Result<()> {
        contract!(
            self.contains_point(z),
            "point {z} is not in the apartment of {}{}",
            self.family,
            self.rank
        );
        Ok(())
    }

    /// Barycentric coordinates of `z` with respect to the fundamental alcove.
    pub fn alcove_barycentric(&self, z: &ApartmentPoint) -> Vec<Rational> {
        self.affine_simple
            .iter()
            .zip(&self.alcove_vertices)
            .map(|(a, v)| a.eval(z) / a.eval(v))
            .collect()
    }

    pub fn in_closed_alcove(&self, z: &ApartmentPoint) -> bool {
        self.affine_simple.iter().all(|a| !a.eval(z).is_negative())
    }

    /// All arrangement vertices inside the closed box `[lo_i, hi_i]`.
    pub fn vertex_candidates(&self, lo: &[Rational], hi: &[Rational]) -> Vec<ApartmentPoint> {
        let n = self.rank;
        let mut out = Vec::new();
        match self.family {
            Family::C => {
                // Vertices of the C_n arrangement are exactly (1/2 Z)^n.
                let ranges: Vec<(i64, i64)> = (0..n)
                    .map(|i| {
                        (
                            rational::ceil_int(&(lo[i] * int(2))),
                            rational::floor_int(&(hi[i] * int(2))),
                        )
                    })
                    .collect();
                for_each_grid(&ranges, &mut |pt| {
                    out.push(ApartmentPoint(pt.iter().map(|&k| q(k, 2)).collect()));
                });
            }
            Family::A => {
                // Class k: z = m - (k/n)·1 with m integral and Σ m = k.
                for k in 0..n as i64 {
                    let shift = q(k, n as i64);
                    let ranges: Vec<(i64, i64)> = (0..n)
                        .map(|i| {
                            (
                                rational::ceil_int(&(lo[i] + shift)),
                                rational::floor_int(&(hi[i] + shift)),
                            )
                        })
                        .collect();
                    for_each_grid(&ranges, &mut |m| {
                        if m.iter().sum::<i64>() == k {
                            out.push(ApartmentPoint(m.iter().map(|&c| int(c) - shift).collect()));
                        }
                    });
                }
            }
        }
        out.sort();
        out
    }
}

fn for_each_grid(ranges: &[(i64, i64)], f: &mut dyn FnMut(&[i64])) {
    if ranges.iter().any(|(a, b)| a > b) {
        return;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        f(&cur);
        let mut i = 0;
        loop {
            if i == ranges.len() {
                return;
            }
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
            i += 1;
        }
    }
}

/// Fundamental alcove vertices `v_0..v_n` of a type C datum.
pub fn fundamental_alcove_vertices(rd: &RootDatum) -> Result<Vec<ApartmentPoint>> {
    contract!(rd.family == Family::C, "fundamental_alcove_vertices expects type C");
    Ok(rd.alcove_vertices.clone())
}

/// Reduces `z` into the closed fundamental alcove by affine simple
/// reflections. Returns the representative and the word applied to `z`.
pub fn reduce_to_alcove(z: &ApartmentPoint, rd: &RootDatum) -> Result<(ApartmentPoint, WeylWord)> {
    rd.check_point(z)?;
    // Each reflection in a wall separating z from the alcove removes exactly
    // one separating wall, so this bounds the word length.
    let bound: i64 = rd
        .positive_roots()
        .map(|a| rational::ceil_int(&a.pair(z).abs()) + 1)
        .sum::<i64>()
        + 1;
    let mut p = z.clone();
    let mut word = Vec::new();
    loop {
        let neg = rd
            .affine_simple
            .iter()
            .position(|a| a.eval(&p).is_negative());
        let Some(j) = neg else {
            return Ok((p, WeylWord(word)));
        };
        if word.len() as i64 >= bound {
            return Err(Error::Internal(format!(
                "alcove reduction of {z} exceeded {bound} steps"
            )));
        }
        p = rd.affine_simple[j].reflect(&p);
        word.push(j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[(i64, i64)]) -> ApartmentPoint {
        ApartmentPoint::new(c.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn c2_roots() {
        let rd = build_root_datum(Family::C, 2).unwrap();
        let mut expected: Vec<Root> = [
            [2, 0], [-2, 0], [0, 2], [0, -2], [1, -1], [-1, 1], [1, 1], [-1, -1],
        ]
        .iter()
        .map(|v| Root(v.to_vec()))
        .collect();
        expected.sort();
        assert_eq!(rd.roots(), expected.as_slice());
        assert_eq!(rd.simple_roots(), &[Root(vec![1, -1]), Root(vec![0, 2])]);
        assert_eq!(rd.long_roots().len(), 4);
    }

    #[test]
    fn c1_roots() {
        let rd = build_root_datum(Family::C, 1).unwrap();
        assert_eq!(rd.roots(), &[Root(vec![-2]), Root(vec![2])]);
    }

    #[test]
    fn a3_roots_by_enumeration() {
        let rd = build_root_datum(Family::A, 3).unwrap();
        let mut brute = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let mut v = vec![0i64; 3];
                    v[i] += 1;
                    v[j] -= 1;
                    brute.push(Root(v));
                }
            }
        }
        brute.sort();
        assert_eq!(rd.roots(), brute.as_slice());
        assert_eq!(rd.roots().len(), 6);
        for r in rd.roots() {
            assert!(rd.roots().contains(&r.neg()));
        }
    }

    #[test]
    fn bad_ranks() {
        assert!(matches!(build_root_datum(Family::C, 0), Err(Error::Config(_))));
        assert!(matches!(build_root_datum(Family::A, 1), Err(Error::Config(_))));
        assert!("B".parse::<Family>().is_err());
    }

    #[test]
    fn evaluation_examples() {
        let psi = AffineRoot::new(Root(vec![2, 0]), 0);
        assert_eq!(eval_affine(&psi, &pt(&[(1, 2), (0, 1)])).unwrap(), int(1));
        let psi = AffineRoot::new(Root(vec![1, 1]), -1);
        assert_eq!(eval_affine(&psi, &pt(&[(1, 2), (1, 2)])).unwrap(), int(0));
        let psi = AffineRoot::new(Root(vec![1, -1]), 3);
        assert_eq!(eval_affine(&psi, &pt(&[(1, 4), (1, 4)])).unwrap(), int(3));
        assert!(matches!(
            eval_affine(&psi, &pt(&[(1, 4)])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn alcove_vertices_type_c() {
        let c2 = build_root_datum(Family::C, 2).unwrap();
        assert_eq!(
            fundamental_alcove_vertices(&c2).unwrap(),
            vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 2), (0, 1)]), pt(&[(1, 2), (1, 2)])]
        );
        let c1 = build_root_datum(Family::C, 1).unwrap();
        assert_eq!(
            fundamental_alcove_vertices(&c1).unwrap(),
            vec![pt(&[(0, 1)]), pt(&[(1, 2)])]
        );
        let c4 = build_root_datum(Family::C, 4).unwrap();
        let v = fundamental_alcove_vertices(&c4).unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v[3], pt(&[(1, 2), (1, 2), (1, 2), (0, 1)]));
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert!(fundamental_alcove_vertices(&a3).is_err());
    }

    #[test]
    fn affine_simple_roots_are_dual_to_vertices() {
        for rd in [
            build_root_datum(Family::C, 3).unwrap(),
            build_root_datum(Family::A, 4).unwrap(),
        ] {
            for (j, a) in rd.affine_simple_roots().iter().enumerate() {
                for (i, v) in rd.alcove_vertices().iter().enumerate() {
                    assert_eq!(a.eval(v).is_zero(), i != j, "a_{j} at v_{i}");
                }
            }
            let bary = ApartmentPoint::barycentre(rd.alcove_vertices());
            let lambda = rd.alcove_barycentric(&bary);
            let k = rd.alcove_vertices().len() as i64;
            assert!(lambda.iter().all(|l| *l == q(1, k)));
        }
    }

    #[test]
    fn reduce_examples() {
        let rd = build_root_datum(Family::C, 2).unwrap();
        let v2 = pt(&[(1, 2), (1, 2)]);
        let (p, w) = reduce_to_alcove(&v2, &rd).unwrap();
        assert_eq!(p, v2);
        assert!(w.is_empty());

        // wy = (0, 1/2) is the mirror image of y = (1/2, 0) in z_1 = z_2.
        let wy = pt(&[(0, 1), (1, 2)]);
        let (p, w) = reduce_to_alcove(&wy, &rd).unwrap();
        assert_eq!(p, pt(&[(1, 2), (0, 1)]));
        assert_eq!(w.apply(&wy, &rd), p);
        assert_eq!(w.apply_inverse(&p, &rd), wy);

        let z = pt(&[(3, 2), (-1, 2)]);
        let (p, w) = reduce_to_alcove(&z, &rd).unwrap();
        assert!(rd.in_closed_alcove(&p));
        assert!(p.coords().iter().all(|c| (*c * int(2)).is_integer()));
        assert_eq!(w.apply(&z, &rd), p);
    }

    #[test]
    fn reduce_type_a() {
        let rd = build_root_datum(Family::A, 3).unwrap();
        let z = pt(&[(5, 3), (-1, 3), (-4, 3)]);
        let (p, w) = reduce_to_alcove(&z, &rd).unwrap();
        assert!(rd.in_closed_alcove(&p));
        assert_eq!(w.apply(&z, &rd), p);
        assert!(reduce_to_alcove(&pt(&[(1, 1), (0, 1), (0, 1)]), &rd).is_err());
    }

    #[test]
    fn vertex_candidates_match_lattices() {
        let c2 = build_root_datum(Family::C, 2).unwrap();
        let v = c2.vertex_candidates(&[int(0), int(0)], &[q(1, 2), q(1, 2)]);
        assert_eq!(v.len(), 4);
        let a3 = build_root_datum(Family::A, 3).unwrap();
        let v = a3.vertex_candidates(&[int(-1); 3], &[int(1); 3]);
        for w in a3.alcove_vertices() {
            assert!(v.contains(w));
        }
        for p in &v {
            assert!(a3.contains_point(p));
        }
    }
}
