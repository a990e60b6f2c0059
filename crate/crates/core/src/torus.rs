//! Anisotropic tori of `Sp_{2n}` built as products of rank-one tori, and
//! their geometry in the standard apartment.
//!
//! A factor is one of three kinds: unramified and attached to `1/2`,
//! ramified and attached to the alcove midpoint `1/4`, or unramified and
//! attached to `0`. An unramified factor fixes only its attached vertex; a
//! ramified factor fixes the whole rank-one alcove `[0, 1/2]`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::apartment::{self, facet_of, HalfSpace, Region};
use crate::error::{Error, Result};
use crate::rational::{int, q, Rational};
use crate::roots::{build_root_datum, ApartmentPoint, Family, RootDatum};

/// Declaration order is the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    UnramifiedHalf,
    RamifiedMid,
    UnramifiedZero,
}

impl FactorKind {
    pub fn attached_coordinate(self) -> Rational {
        match self {
            FactorKind::UnramifiedHalf => q(1, 2),
            FactorKind::RamifiedMid => q(1, 4),
            FactorKind::UnramifiedZero => Rational::zero(),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            FactorKind::UnramifiedHalf => "u½",
            FactorKind::RamifiedMid => "r",
            FactorKind::UnramifiedZero => "u0",
        }
    }
}

/// Factors in canonical order (`u½`, then `r`, then `u0`), plus the
/// permutation that sorted the input: `permutation[k]` is the input index of
/// canonical factor `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusSpec {
    factors: Vec<FactorKind>,
    permutation: Vec<usize>,
}

impl TorusSpec {
    pub fn new(input: Vec<FactorKind>) -> Result<TorusSpec> {
        if input.is_empty() {
            return Err(Error::Config("a torus needs at least one factor".into()));
        }
        let mut permutation: Vec<usize> = (0..input.len()).collect();
        permutation.sort_by_key(|&i| input[i]);
        let factors = permutation.iter().map(|&i| input[i]).collect();
        Ok(TorusSpec { factors, permutation })
    }

    /// `m` factors `u½`, `l` factors `r`, and `n - m - l` factors `u0`.
    pub fn from_counts(m: usize, l: usize, n: usize) -> Result<TorusSpec> {
        if m + l > n {
            return Err(Error::Config(format!("m + l = {} exceeds n = {n}", m + l)));
        }
        let mut f = vec![FactorKind::UnramifiedHalf; m];
        f.extend(vec![FactorKind::RamifiedMid; l]);
        f.extend(vec![FactorKind::UnramifiedZero; n - m - l]);
        TorusSpec::new(f)
    }

    pub fn factors(&self) -> &[FactorKind] {
        &self.factors
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    fn count(&self, kind: FactorKind) -> usize {
        self.factors.iter().filter(|&&k| k == kind).count()
    }

    pub fn m(&self) -> usize {
        self.count(FactorKind::UnramifiedHalf)
    }

    pub fn l(&self) -> usize {
        self.count(FactorKind::RamifiedMid)
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn root_datum(&self) -> RootDatum {
        build_root_datum(Family::C, self.n()).expect("n >= 1 by construction")
    }
}

impl fmt::Display for TorusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups = [
            (FactorKind::UnramifiedHalf, self.m()),
            (FactorKind::RamifiedMid, self.l()),
            (FactorKind::UnramifiedZero, self.n() - self.m() - self.l()),
        ];
        let parts: Vec<String> = groups
            .iter()
            .filter(|(_, c)| *c > 0)
            .map(|(k, c)| if *c == 1 { k.token().to_string() } else { format!("{}^{c}", k.token()) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Accepts `u½`, `uh` or `u1/2`, then `r`, `u0`, each with an optional
/// exponent written `^k` or as bare digits (`r2`). Tokens may appear in any
/// order and may be separated by spaces.
impl FromStr for TorusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        const KINDS: [(&str, FactorKind); 5] = [
            ("u½", FactorKind::UnramifiedHalf),
            ("u1/2", FactorKind::UnramifiedHalf),
            ("uh", FactorKind::UnramifiedHalf),
            ("u0", FactorKind::UnramifiedZero),
            ("r", FactorKind::RamifiedMid),
        ];
        let mut factors = Vec::new();
        let mut rest = s.trim_start();
        while !rest.is_empty() {
            let (kind, after) = KINDS
                .iter()
                .find_map(|(tok, k)| rest.strip_prefix(tok).map(|r| (*k, r)))
                .ok_or_else(|| Error::Parse(format!("bad torus spec {s:?} at {rest:?}")))?;
            let (explicit, after) = match after.strip_prefix('^') {
                Some(r) => (true, r),
                None => (false, after),
            };
            let digits = after.len() - after.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            let exp = if digits == 0 {
                if explicit {
                    return Err(Error::Parse(format!("missing exponent after '^' in {s:?}")));
                }
                1
            } else {
                after[..digits]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?
            };
            factors.extend(std::iter::repeat(kind).take(exp));
            rest = after[digits..].trim_start();
        }
        TorusSpec::new(factors).map_err(|_| Error::Parse(format!("torus spec {s:?} has no factors")))
    }
}

#[derive(Serialize, Deserialize)]
struct SpecCounts {
    m: usize,
    l: usize,
    n: usize,
}

impl Serialize for TorusSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecCounts { m: self.m(), l: self.l(), n: self.n() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = SpecCounts::deserialize(d)?;
        TorusSpec::from_counts(c.m, c.l, c.n).map_err(serde::de::Error::custom)
    }
}

/// `x = (1/2, .., 1/2, 1/4, .., 1/4, 0, .., 0)`.
pub fn attachment_point(spec: &TorusSpec) -> ApartmentPoint {
    ApartmentPoint::new(spec.factors().iter().map(|k| k.attached_coordinate()).collect())
}

/// The facet containing `x`, checked to be the vertex `v_m` when `l = 0`
/// and the open segment `(v_m, v_{m+l})` otherwise.
pub fn attachment_facet(spec: &TorusSpec) -> Result<apartment::Facet> {
    let rd = spec.root_datum();
    let f = facet_of(&attachment_point(spec), &rd)?;
    let v = rd.alcove_vertices();
    let (m, l) = (spec.m(), spec.l());
    let mut expected = vec![v[m].clone()];
    if l > 0 {
        expected.push(v[m + l].clone());
    }
    expected.sort();
    if f.vertices != expected {
        return Err(Error::CrossValidation(format!(
            "facet of the attachment point of {spec} has vertices {:?}",
            f.vertices.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(f)
}

/// `A^T`: `z_j = 1/2` on `u½` slots, `z_j = 0` on `u0` slots and
/// `0 <= z_j <= 1/2` on ramified slots.
pub fn fixed_region(spec: &TorusSpec) -> Region {
    let n = spec.n();
    let x = attachment_point(spec);
    let unit = |j: usize, c: i64| {
        let mut v = vec![Rational::zero(); n];
        v[j] = int(c);
        v
    };
    let mut constraints = Vec::new();
    let mut equalities = Vec::new();
    for (j, kind) in spec.factors().iter().enumerate() {
        match kind {
            FactorKind::RamifiedMid => {
                constraints.push(HalfSpace::new(unit(j, 1), q(1, 4)));
                constraints.push(HalfSpace::new(unit(j, -1), q(1, 4)));
            }
            _ => equalities.push(HalfSpace::new(unit(j, 1), Rational::zero())),
        }
    }
    Region::new(x, constraints, equalities).expect("fixed region is a nonempty box")
}

/// `c_T = r(A^T, A, x)`.
pub fn torus_radius(spec: &TorusSpec) -> Rational {
    let rd = spec.root_datum();
    apartment::simplicial_radius(&fixed_region(spec), &attachment_point(spec), &rd)
        .expect("x lies in its own fixed region")
}

/// Is `A^T` the closure of the facet containing `x`? Both are convex
/// polytopes, so they are compared through their vertex sets.
pub fn is_single_facet_closure(spec: &TorusSpec) -> bool {
    let rd = spec.root_datum();
    let facet = facet_of(&attachment_point(spec), &rd).expect("x is a point of the apartment");
    fixed_region(spec).polytope_vertices() == facet.vertices
}
