//! Brute-force checks of the closed-form geometry against matrices.

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{in_parahoric, parahoric_pattern, LaurentMatrix, ValuationPattern};
use super::sampling::{diagonal_element, random_series, root_group_element, TorusSampler};
use super::series::check_field;
use super::SLACK;
use crate::apartment::{closure_vertices, omega_region, simplicial_closure};
use crate::error::{contract, Error, Result};
use crate::rational::{ceil_int, int, Rational};
use crate::roots::{build_root_datum, ApartmentPoint, Family};
use crate::torus::{fixed_region, TorusSpec};

/// Fewest torus samples accepted by [`oracle_fixed_region`].
pub const MIN_SAMPLES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleParams {
    pub q: u64,
    pub n_trunc: i32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams { q: 3, n_trunc: 8, samples: 64, seed: 0 }
    }
}

impl OracleParams {
    pub fn validate(&self) -> Result<()> {
        check_field(self.q)?;
        if self.n_trunc < 4 {
            return Err(Error::Config(format!("truncation order N must be >= 4, got {}", self.n_trunc)));
        }
        if self.samples == 0 {
            return Err(Error::Config("at least one sample is needed".into()));
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// JSON shape shared by every check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub check: String,
    pub q: u64,
    #[serde(rename = "N")]
    pub n_trunc: i32,
    pub samples: usize,
    pub verdict: bool,
    pub witnesses: Vec<serde_json::Value>,
}

impl OracleReport {
    fn new(check: &str, p: &OracleParams, verdict: bool, witnesses: Vec<serde_json::Value>) -> Self {
        OracleReport { check: check.into(), q: p.q, n_trunc: p.n_trunc, samples: p.samples, verdict, witnesses }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One entry of a matrix breaking a valuation pattern. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryViolation {
    pub entry: (usize, usize),
    pub valuation: Option<i32>,
    pub bound: i64,
}

fn violation(g: &LaurentMatrix, pattern: &ValuationPattern) -> Option<EntryViolation> {
    pattern
        .first_violation(g)
        .map(|(i, j, valuation, bound)| EntryViolation { entry: (i + 1, j + 1), valuation, bound })
}

fn checked(g: LaurentMatrix) -> Result<LaurentMatrix> {
    let modulus = g.min_prec() - SLACK;
    if !g.is_symplectic_mod(modulus) {
        return Err(Error::Internal(format!("sampled element is not symplectic modulo t^{modulus}:\n{g}")));
    }
    Ok(g)
}

fn depth0(z: &ApartmentPoint) -> ValuationPattern {
    parahoric_pattern(z, z.dim(), Rational::zero()).expect("depth 0 and matching dimension")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedRegionOutcome {
    /// Box vertices fixed by every sample.
    pub survivors: Vec<ApartmentPoint>,
    /// Box vertices of the closed-form `A^T`.
    pub expected: Vec<ApartmentPoint>,
}

impl FixedRegionOutcome {
    pub fn agrees(&self) -> bool {
        self.survivors == self.expected
    }

    pub fn report(&self, p: &OracleParams) -> OracleReport {
        let w = self.survivors.iter().map(|v| serde_json::Value::String(v.to_string())).collect();
        OracleReport::new("fixed-region", p, self.agrees(), w)
    }
}

/// Vertices `z` of the box `[-1, 1]^n` with every sampled `t ∈ T` in `G_z`.
pub fn oracle_fixed_region(spec: &TorusSpec, p: &OracleParams) -> Result<FixedRegionOutcome> {
    p.validate()?;
    if p.samples < MIN_SAMPLES {
        return Err(Error::Config(format!("fixed-region needs at least {MIN_SAMPLES} samples, got {}", p.samples)));
    }
    let n = spec.n();
    let rd = spec.root_datum();
    let sampler = TorusSampler::new(spec.clone(), p.q, p.n_trunc)?;
    let mut rng = p.rng();
    let elements: Vec<LaurentMatrix> = (0..p.samples).map(|_| checked(sampler.sample(&mut rng))).collect::<Result<_>>()?;

    let lo = vec![int(-1); n];
    let hi = vec![int(1); n];
    let region = fixed_region(spec);
    let mut survivors = Vec::new();
    let mut expected = Vec::new();
    for z in rd.vertex_candidates(&lo, &hi) {
        let pattern = depth0(&z);
        if elements.iter().all(|g| pattern.first_violation(g).is_none()) {
            survivors.push(z.clone());
        }
        if region.contains(&z) {
            expected.push(z);
        }
    }
    survivors.sort();
    expected.sort();
    Ok(FixedRegionOutcome { survivors, expected })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitWitness {
    pub route: &'static str,
    pub a: u64,
    pub vertex: String,
    pub sample: usize,
    #[serde(flatten)]
    pub violation: EntryViolation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkOutcome {
    pub witnesses: Vec<OrbitWitness>,
    /// `(route, a)` pairs for which no sample left the parahoric.
    pub missing: Vec<(&'static str, u64)>,
    /// `a = 0`: the torus itself lies in `G_y` and `G_{wy}`.
    pub identity_contained: bool,
    /// `^w T` lies in `G_y` and `G_{wy}`.
    pub w_contained: bool,
    /// Every printed upper-unipotent `ā` lies in `G_y`.
    pub printed_in_g_y: bool,
}

impl RemarkOutcome {
    pub fn verdict(&self) -> bool {
        self.missing.is_empty() && self.identity_contained && self.w_contained
    }

    pub fn report(&self, p: &OracleParams) -> OracleReport {
        let w = self.witnesses.iter().map(|w| serde_json::to_value(w).expect("witness serializes")).collect();
        OracleReport::new("remark-orbit", p, self.verdict(), w)
    }
}

pub const ROUTE_PRINTED: &str = "printed-upper-vs-wy";
pub const ROUTE_LOWER: &str = "lower-vs-y";

/// `diag(A, ᵗA^-1)` for a `2 x 2` block `A` of determinant 1 in `GL_2(O)`.
fn levi_element(a: [[i64; 2]; 2], q: u64, prec: i32) -> LaurentMatrix {
    let inv_t = [[a[1][1], -a[1][0]], [-a[0][1], a[0][0]]];
    let rows = vec![
        vec![a[0][0], a[0][1], 0, 0],
        vec![a[1][0], a[1][1], 0, 0],
        vec![0, 0, inv_t[0][0], inv_t[0][1]],
        vec![0, 0, inv_t[1][0], inv_t[1][1]],
    ];
    LaurentMatrix::from_int(&rows, q, prec)
}

/// For the `Sp_4` torus `r^2`, `y = (1/2, 0)` and `wy = (0, 1/2)`: every
/// unit residue `a` gives a conjugate `^{ā}T` leaving the relevant vertex
/// stabilizer. The printed representatives `[[1, a], [0, 1]]` fix `y`, so
/// they are tested against `wy`; their transposes are tested against `y`.
pub fn remark_orbit_check(p: &OracleParams) -> Result<RemarkOutcome> {
    p.validate()?;
    let (q, prec) = (p.q, p.n_trunc);
    let spec = TorusSpec::from_counts(0, 2, 2)?;
    let sampler = TorusSampler::new(spec, q, prec)?;
    let mut rng = p.rng();
    let elements: Vec<LaurentMatrix> = (0..p.samples).map(|_| checked(sampler.sample(&mut rng))).collect::<Result<_>>()?;

    let half = crate::rational::q(1, 2);
    let y = ApartmentPoint::new(vec![half, Rational::zero()]);
    let wy = ApartmentPoint::new(vec![Rational::zero(), half]);
    let (py, pwy) = (depth0(&y), depth0(&wy));

    let contained_all = |h: &LaurentMatrix| -> Result<bool> {
        for g in &elements {
            let c = checked(g.conjugate_by(h))?;
            if violation(&c, &py).is_some() || violation(&c, &pwy).is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let mut printed_in_g_y = true;
    for a in 1..q {
        let ai = a as i64;
        let printed = levi_element([[1, ai], [0, 1]], q, prec);
        printed_in_g_y &= in_parahoric(&printed, &py)?;
        let lower = levi_element([[1, 0], [ai, 1]], q, prec);
        for (route, h, vertex, pattern) in [(ROUTE_PRINTED, &printed, &wy, &pwy), (ROUTE_LOWER, &lower, &y, &py)] {
            let mut found = None;
            for (k, g) in elements.iter().enumerate() {
                let c = checked(g.conjugate_by(h))?;
                if let Some(v) = violation(&c, pattern) {
                    found = Some(OrbitWitness { route, a, vertex: vertex.to_string(), sample: k, violation: v });
                    break;
                }
            }
            match found {
                Some(w) => witnesses.push(w),
                None => missing.push((route, a)),
            }
        }
    }
    witnesses.sort_by(|x, y| x.route.cmp(y.route).then(x.a.cmp(&y.a)));

    let identity_contained = contained_all(&LaurentMatrix::identity(4, q, prec))?;
    let w = LaurentMatrix::from_int(
        &[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]],
        q,
        prec,
    );
    let w_contained = contained_all(&w)?;
    Ok(RemarkOutcome { witnesses, missing, identity_contained, w_contained, printed_in_g_y })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerFailure {
    pub sample: usize,
    pub vertex: String,
    #[serde(flatten)]
    pub violation: EntryViolation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerOutcome {
    /// Vertices of the simplicial closure of `Ω_A(x, s)`.
    pub vertices: Vec<ApartmentPoint>,
    pub failures: Vec<StabilizerFailure>,
}

impl StabilizerOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn report(&self, p: &OracleParams) -> OracleReport {
        let w = self.failures.iter().map(|f| serde_json::to_value(f).expect("failure serializes")).collect();
        OracleReport::new("stabilizer", p, self.passed(), w)
    }
}

/// Samples products of one to three generators of `G_{x,s}` (root group
/// elements `I + cX_α` with `ν(c) = ceil(s - α(x))` exactly, and diagonal
/// elements of the depth-`s` torus) and checks each fixes every vertex of
/// the simplicial closure of `Ω_A(x, s)`.
pub fn lemma_stabilizer_check(x: &ApartmentPoint, s: Rational, p: &OracleParams) -> Result<StabilizerOutcome> {
    p.validate()?;
    contract!(!s.is_negative(), "s must be >= 0, got {s}");
    let n = x.dim();
    contract!(n >= 1, "empty point");
    let rd = build_root_datum(Family::C, n)?;
    contract!(rd.in_closed_alcove(x), "{x} is not in the closed fundamental alcove");

    let omega = omega_region(x, s, &rd)?;
    let vertices = closure_vertices(&simplicial_closure(&omega, &rd)?);
    let patterns: Vec<ValuationPattern> = vertices.iter().map(depth0).collect();

    let (q, prec) = (p.q, p.n_trunc);
    let torus_depth = ceil_int(&s);
    let mut rng = p.rng();
    let roots = rd.roots().to_vec();
    let mut failures = Vec::new();
    for k in 0..p.samples {
        let count = rng.gen_range(1..=3);
        let mut g = LaurentMatrix::identity(2 * n, q, prec);
        for _ in 0..count {
            let h = if rng.gen_range(0..=roots.len()) == roots.len() {
                let d: Vec<_> = (0..n)
                    .map(|_| {
                        if s.is_zero() {
                            random_series(&mut rng, q, prec, 0, true)
                        } else {
                            let e = random_series(&mut rng, q, prec, torus_depth as i32, true);
                            &crate::oracle::TruncSeries::one(q, prec) + &e
                        }
                    })
                    .collect();
                diagonal_element(&d)
            } else {
                let alpha = roots.choose(&mut rng).expect("roots are nonempty");
                let val = ceil_int(&(s - alpha.pair(x)));
                let c = random_series(&mut rng, q, prec, val as i32, true);
                root_group_element(n, alpha.coeffs(), &c)
            };
            g = g.mul(&h);
        }
        let g = checked(g)?;
        for (v, pattern) in vertices.iter().zip(&patterns) {
            if let Some(violation) = violation(&g, pattern) {
                failures.push(StabilizerFailure { sample: k, vertex: v.to_string(), violation });
            }
        }
    }
    Ok(StabilizerOutcome { vertices, failures })
}
