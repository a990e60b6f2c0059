//! Classification of Mackey components by the location `g^{-1}y` of the
//! conjugated vertex, and counting of types per maximal compact class.
//!
//! The representation theory is taken as given: a component at a vertex of
//! `A^T` is a type, and a component at a vertex outside it has no type as a
//! subrepresentation once a witness point `z` on `[x, g^{-1}y]`, in the
//! closure of `Ω_A(x, s_0)` and outside `A^T`, exists. Both statements need
//! `s_0 > c_T`. Reports also assume `B^T = A^T` and say so.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::apartment::{enumerate_vertices, facet_of, in_simplicial_closure, omega_region, Region};
use crate::error::{contract, Error, Result};
use crate::rational::{dot, format_rational, Rational};
use crate::roots::{ApartmentPoint, RootDatum};
use crate::torus::{attachment_point, fixed_region, is_single_facet_closure, torus_radius, TorusSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusInput {
    spec: TorusSpec,
    s0: Rational,
}

impl CensusInput {
    pub fn new(spec: TorusSpec, s0: Rational) -> Result<CensusInput> {
        contract!(s0.is_positive(), "s0 must be positive, got {s0}");
        Ok(CensusInput { spec, s0 })
    }

    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn s0(&self) -> Rational {
        self.s0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Type,
    NonType,
    OutOfWindow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeyVerdict {
    pub location: ApartmentPoint,
    pub verdict: Verdict,
    pub witness: Option<ApartmentPoint>,
}

/// Everything derived from a [`CensusInput`] once.
#[derive(Debug, Clone)]
pub struct Census {
    input: CensusInput,
    rd: RootDatum,
    x: ApartmentPoint,
    fixed: Region,
    omega: Region,
    c_t: Rational,
}

impl Census {
    pub fn new(input: CensusInput) -> Census {
        let rd = input.spec.root_datum();
        let x = attachment_point(&input.spec);
        let fixed = fixed_region(&input.spec);
        let omega = omega_region(&x, input.s0, &rd).expect("s0 > 0 and x is a point of the apartment");
        let c_t = torus_radius(&input.spec);
        Census { input, rd, x, fixed, omega, c_t }
    }

    pub fn input(&self) -> &CensusInput {
        &self.input
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn attachment_point(&self) -> &ApartmentPoint {
        &self.x
    }

    pub fn fixed_region(&self) -> &Region {
        &self.fixed
    }

    pub fn omega(&self) -> &Region {
        &self.omega
    }

    pub fn c_t(&self) -> Rational {
        self.c_t
    }

    /// `s_0 > c_T`.
    pub fn applicable(&self) -> bool {
        self.input.s0 > self.c_t
    }

    pub fn classify(&self, loc: &ApartmentPoint) -> Result<MackeyVerdict> {
        let f = facet_of(loc, &self.rd)?;
        contract!(f.dimension == 0, "{loc} is not a vertex");
        let (verdict, witness) = if !self.applicable() {
            (Verdict::OutOfWindow, None)
        } else if self.fixed.contains(loc) {
            (Verdict::Type, None)
        } else {
            (Verdict::NonType, Some(self.witness(loc)?))
        };
        Ok(MackeyVerdict { location: loc.clone(), verdict, witness })
    }

    /// Largest `t` in `[0, 1]` with `x + t d` in the region.
    fn clip(&self, region: &Region, d: &[Rational]) -> Rational {
        let mut t = Rational::one();
        for h in region.constraints() {
            let slope = dot(&h.covector, d);
            let offset = dot(&h.covector, &self.x.sub(region.base()));
            if slope.is_positive() {
                t = t.min((h.bound - offset) / slope);
            }
        }
        t
    }

    fn witness(&self, loc: &ApartmentPoint) -> Result<ApartmentPoint> {
        let d = loc.sub(&self.x);
        let t_omega = self.clip(&self.omega, &d);
        let z = self.x.add_scaled(&d, t_omega);
        if !self.fixed.contains(&z) {
            return Ok(z);
        }
        // Only reachable if Ω does not reach past A^T along this segment:
        // step out of A^T and accept the first point still in the closure.
        let t_fixed = self.fixed_exit(&d);
        let mut step = (Rational::one() - t_fixed) / 2;
        for _ in 0..16 {
            let z = self.x.add_scaled(&d, t_fixed + step);
            if !self.fixed.contains(&z) && in_simplicial_closure(&z, &self.omega, &self.rd)? {
                return Ok(z);
            }
            step /= 2;
        }
        Err(Error::Internal(format!("no witness found on [x, {loc}]")))
    }

    fn fixed_exit(&self, d: &[Rational]) -> Rational {
        let mut t = self.clip(&self.fixed, d);
        for h in self.fixed.equalities() {
            if !dot(&h.covector, d).is_zero() {
                t = Rational::zero();
            }
        }
        t
    }

    /// The three conditions a NonType witness must meet.
    pub fn witness_is_valid(&self, loc: &ApartmentPoint, z: &ApartmentPoint) -> Result<bool> {
        let d = loc.sub(&self.x);
        let u = z.sub(&self.x);
        let on_segment = match d.iter().position(|c| !c.is_zero()) {
            None => u.iter().all(|c| c.is_zero()),
            Some(i) => {
                let t = u[i] / d[i];
                t >= Rational::zero() && t <= Rational::one() && (0..d.len()).all(|k| u[k] == t * d[k])
            }
        };
        Ok(on_segment && in_simplicial_closure(z, &self.omega, &self.rd)? && !self.fixed.contains(z))
    }

    pub fn report(&self) -> Result<CensusReport> {
        let n = self.input.spec.n();
        let vertices = enumerate_vertices(&self.fixed, &self.rd)?;
        let mut counts = vec![0usize; n + 1];
        for (_, t) in &vertices {
            counts[*t] += 1;
        }
        let strong_unicity = counts.iter().all(|&c| c <= 1);
        let single_facet = is_single_facet_closure(&self.input.spec);
        let applicable = self.applicable();
        if applicable && strong_unicity != single_facet {
            return Err(Error::CrossValidation(format!(
                "{}: strong unicity {strong_unicity} but single facet {single_facet}",
                self.input.spec
            )));
        }
        Ok(CensusReport {
            spec: self.input.spec.clone(),
            s0: self.input.s0,
            c_t: self.c_t,
            applicable,
            counts,
            strong_unicity,
            single_facet,
            assumes_bt_eq_at: true,
            vertices,
        })
    }
}

pub fn classify_location(input: &CensusInput, loc: &ApartmentPoint) -> Result<MackeyVerdict> {
    Census::new(input.clone()).classify(loc)
}

pub fn run_census(input: &CensusInput) -> Result<CensusReport> {
    Census::new(input.clone()).report()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongUnicity {
    pub holds: bool,
    pub justification: String,
}

/// Strong unicity holds iff `A^T` is the closure of one facet; the census
/// counts are checked to agree.
pub fn strong_unicity_verdict(input: &CensusInput) -> Result<StrongUnicity> {
    let census = Census::new(input.clone());
    if !census.applicable() {
        return Err(Error::NotApplicable(format!(
            "s0 = {} does not exceed c_T = {}",
            input.s0,
            census.c_t()
        )));
    }
    let report = census.report()?;
    let holds = report.single_facet;
    let justification = if holds {
        format!("A^T is the closure of the facet containing x; every count is at most 1 ({})", report.counts_line())
    } else {
        format!("A^T is not the closure of a single facet; some vertex class carries several types ({})", report.counts_line())
    };
    Ok(StrongUnicity { holds, justification })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub spec: TorusSpec,
    pub s0: Rational,
    pub c_t: Rational,
    pub applicable: bool,
    /// Indexed by vertex type.
    pub counts: Vec<usize>,
    pub strong_unicity: bool,
    pub single_facet: bool,
    pub assumes_bt_eq_at: bool,
    /// Vertices of `A^T` with their types.
    pub vertices: Vec<(ApartmentPoint, usize)>,
}

struct Counts<'a>(&'a [usize]);

impl Serialize for Counts<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, c) in self.0.iter().enumerate() {
            map.serialize_entry(&format!("v{i}"), c)?;
        }
        map.end()
    }
}

impl Serialize for CensusReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CensusReport", 8)?;
        st.serialize_field("spec", &self.spec.to_string())?;
        st.serialize_field("s0", &format_rational(&self.s0))?;
        st.serialize_field("cT", &format_rational(&self.c_t))?;
        st.serialize_field("applicable", &self.applicable)?;
        st.serialize_field("counts", &Counts(&self.counts))?;
        st.serialize_field("strong_unicity", &self.strong_unicity)?;
        st.serialize_field("single_facet", &self.single_facet)?;
        st.serialize_field("assumes_BT_eq_AT", &self.assumes_bt_eq_at)?;
        st.end()
    }
}

impl CensusReport {
    pub fn count(&self, vertex_type: usize) -> usize {
        self.counts.get(vertex_type).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    fn counts_line(&self) -> String {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| format!("v{i}: {c}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per vertex type; coordinates of that type's vertices are
    /// joined by `;`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("vertex_type\tcoordinates\tcount\n");
        for (i, c) in self.counts.iter().enumerate() {
            let coords: Vec<String> = self
                .vertices
                .iter()
                .filter(|(_, t)| *t == i)
                .map(|(v, _)| v.to_string())
                .collect();
            let _ = writeln!(out, "v{i}\t{}\t{c}", coords.join(";"));
        }
        out
    }
}
