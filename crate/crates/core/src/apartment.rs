//! Facets, simplicial closures, the polytope `Ω_A(x, s)` and simplicial
//! radii in the standard apartment.
//!
//! Radii here are the apartment-restricted quantity `r(Ω, A, x)`: the sup of
//! `α(z - x)` over `z ∈ Ω` and roots `α` of the standard apartment. The
//! building-wide radius is a sup of this over every apartment through `x`;
//! that sup is not computed.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{contract, Error, Result};
use crate::linalg;
use crate::lp::{self, LinearConstraint, LpOutcome};
use crate::rational::{self, dot, int, Rational};
use crate::roots::{reduce_to_alcove, AffineRoot, ApartmentPoint, Family, RootDatum};

/// `covector · (z - base) <= bound` (or `=` for equalities).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub covector: Vec<Rational>,
    pub bound: Rational,
}

impl HalfSpace {
    pub fn new(covector: Vec<Rational>, bound: Rational) -> Self {
        Self { covector, bound }
    }
}

/// A closed bounded convex polytope, given by inequalities relative to a
/// base point.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    base: ApartmentPoint,
    constraints: Vec<HalfSpace>,
    equalities: Vec<HalfSpace>,
}

impl Region {
    /// Fails unless the region is nonempty and bounded.
    pub fn new(
        base: ApartmentPoint,
        constraints: Vec<HalfSpace>,
        equalities: Vec<HalfSpace>,
    ) -> Result<Region> {
        let d = base.dim();
        contract!(
            constraints.iter().chain(&equalities).all(|h| h.covector.len() == d),
            "constraint dimension does not match base point"
        );
        let region = Region { base, constraints, equalities };
        for i in 0..d {
            for sign in [1, -1] {
                let mut obj = vec![Rational::zero(); d];
                obj[i] = int(sign);
                match region.lp(&obj) {
                    LpOutcome::Optimal { .. } => {}
                    LpOutcome::Unbounded => {
                        return Err(Error::Contract("region is unbounded".into()));
                    }
                    LpOutcome::Infeasible => {
                        return Err(Error::Contract("region is empty".into()));
                    }
                }
            }
        }
        Ok(region)
    }

    /// The one-point region `{x}`.
    pub fn point(x: &ApartmentPoint) -> Region {
        let d = x.dim();
        let equalities = (0..d)
            .map(|i| {
                let mut c = vec![Rational::zero(); d];
                c[i] = Rational::one();
                HalfSpace::new(c, Rational::zero())
            })
            .collect();
        Region { base: x.clone(), constraints: Vec::new(), equalities }
    }

    pub fn base(&self) -> &ApartmentPoint {
        &self.base
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn equalities(&self) -> &[HalfSpace] {
        &self.equalities
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn contains(&self, z: &ApartmentPoint) -> bool {
        let u = z.sub(&self.base);
        self.constraints.iter().all(|h| dot(&h.covector, &u) <= h.bound)
            && self.equalities.iter().all(|h| dot(&h.covector, &u) == h.bound)
    }

    fn absolute(&self, h: &HalfSpace) -> LinearConstraint {
        LinearConstraint::new(h.covector.clone(), h.bound + dot(&h.covector, self.base.coords()))
    }

    pub(crate) fn le_abs(&self) -> Vec<LinearConstraint> {
        self.constraints.iter().map(|h| self.absolute(h)).collect()
    }

    pub(crate) fn eq_abs(&self) -> Vec<LinearConstraint> {
        self.equalities.iter().map(|h| self.absolute(h)).collect()
    }

    fn lp(&self, objective: &[Rational]) -> LpOutcome {
        lp::maximize(objective, &self.le_abs(), &self.eq_abs())
    }

    /// `max objective · z` over the region.
    pub fn maximize(&self, objective: &[Rational]) -> Rational {
        match self.lp(objective) {
            LpOutcome::Optimal { value, .. } => value,
            other => unreachable!("constructor guarantees a bounded nonempty region: {other:?}"),
        }
    }

    pub fn bounding_box(&self) -> (Vec<Rational>, Vec<Rational>) {
        let d = self.dim();
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        for i in 0..d {
            let mut obj = vec![Rational::zero(); d];
            obj[i] = Rational::one();
            hi.push(self.maximize(&obj));
            obj[i] = -Rational::one();
            lo.push(-self.maximize(&obj));
        }
        (lo, hi)
    }

    pub fn is_point(&self) -> bool {
        let (lo, hi) = self.bounding_box();
        lo == hi
    }

    /// Does the region meet the open polytope `{c · z < rhs}`?
    pub fn meets_open(&self, strict: &[LinearConstraint]) -> bool {
        lp::strictly_feasible(&self.le_abs(), &self.eq_abs(), strict)
    }

    /// Inequalities left after dropping, one at a time, each one implied by
    /// the rest. The polytope (and so its vertex set) is unchanged.
    fn irredundant(&self) -> Vec<LinearConstraint> {
        let eqs = self.eq_abs();
        let mut les = self.le_abs();
        les.sort_by(|a, b| a.coeffs.cmp(&b.coeffs).then(a.rhs.cmp(&b.rhs)));
        les.dedup();
        les.retain(|c| c.coeffs.iter().any(|x| !x.is_zero()));
        let mut i = 0;
        while i < les.len() {
            let c = les.remove(i);
            match lp::maximize(&c.coeffs, &les, &eqs) {
                LpOutcome::Optimal { value, .. } if value <= c.rhs => {}
                _ => {
                    les.insert(i, c);
                    i += 1;
                }
            }
        }
        les
    }

    /// Polytope vertices: every maximal-rank subset of the irredundant
    /// constraints is solved exactly and kept when feasible.
    pub fn polytope_vertices(&self) -> Vec<ApartmentPoint> {
        let d = self.dim();
        let eqs = self.eq_abs();
        let les = self.irredundant();
        let eq_rows: Vec<Vec<Rational>> = eqs.iter().map(|c| c.coeffs.clone()).collect();
        let free = d - linalg::rank(&eq_rows);

        let mut out = Vec::new();
        for subset in (0..les.len()).combinations(free) {
            let mut a = eq_rows.clone();
            let mut b: Vec<Rational> = eqs.iter().map(|c| c.rhs).collect();
            for &i in &subset {
                a.push(les[i].coeffs.clone());
                b.push(les[i].rhs);
            }
            let solution = if a.is_empty() {
                None
            } else {
                linalg::solve_unique(&a, &b)
            };
            if let Some(z) = solution {
                let z = ApartmentPoint::new(z);
                if self.contains(&z) {
                    out.push(z);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// `Ω_A(x, s) = { z | α(z - x) <= s for every root α }`.
pub fn omega_region(x: &ApartmentPoint, s: Rational, rd: &RootDatum) -> Result<Region> {
    contract!(!s.is_negative(), "omega_region needs s >= 0, got {s}");
    rd.check_point(x)?;
    let constraints = rd
        .roots()
        .iter()
        .map(|a| HalfSpace::new(a.as_rational(), s))
        .collect();
    Region::new(x.clone(), constraints, ambient_equalities(rd))
}

pub(crate) fn ambient_equalities(rd: &RootDatum) -> Vec<HalfSpace> {
    rd.ambient_equalities()
        .into_iter()
        .map(|e| HalfSpace::new(rational::to_rational_vec(&e), Rational::zero()))
        .collect()
}

/// A face of the affine root hyperplane arrangement.
///
/// `zero_set` holds every affine root vanishing on the facet. `positive_set`
/// holds, for each root gradient, the affine root with that gradient taking
/// the least positive value on the facet; together they cut out the facet
/// (`= 0` / `> 0`), its closure (`= 0` / `>= 0`) and its open star (`> 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub dimension: usize,
    pub vertices: Vec<ApartmentPoint>,
    pub vertex_type: Option<usize>,
    pub zero_set: Vec<AffineRoot>,
    pub positive_set: Vec<AffineRoot>,
}

impl Facet {
    pub fn contains(&self, z: &ApartmentPoint) -> bool {
        self.zero_set.iter().all(|p| p.eval(z).is_zero())
            && self.positive_set.iter().all(|p| p.eval(z).is_positive())
    }

    pub fn closure_contains(&self, z: &ApartmentPoint) -> bool {
        self.zero_set.iter().all(|p| p.eval(z).is_zero())
            && self.positive_set.iter().all(|p| !p.eval(z).is_negative())
    }

    /// Strict inequalities describing the open star (the union of facets
    /// having this one in their closure).
    pub fn star_constraints(&self) -> Vec<LinearConstraint> {
        self.positive_set
            .iter()
            .map(|p| {
                let neg: Vec<Rational> = p.gradient.coeffs().iter().map(|&c| int(-c)).collect();
                LinearConstraint::new(neg, int(p.offset))
            })
            .collect()
    }

    pub fn barycentre(&self) -> ApartmentPoint {
        ApartmentPoint::barycentre(&self.vertices)
    }

    pub fn is_face_of(&self, other: &Facet) -> bool {
        self.vertices.iter().all(|v| other.vertices.contains(v))
    }
}

/// The facet containing `z`.
pub fn facet_of(z: &ApartmentPoint, rd: &RootDatum) -> Result<Facet> {
    rd.check_point(z)?;
    let mut zero_set = Vec::new();
    let mut positive_set = Vec::with_capacity(rd.roots().len());
    for alpha in rd.roots() {
        let a = alpha.pair(z);
        if a.is_integer() {
            zero_set.push(AffineRoot::new(alpha.clone(), -a.to_integer()));
        }
        let k = rational::floor_int(&-a) + 1;
        positive_set.push(AffineRoot::new(alpha.clone(), k));
    }
    let gradients: Vec<Vec<i64>> = zero_set.iter().map(|p| p.gradient.0.clone()).collect();
    let dimension = rd.apartment_dim() - linalg::rank_int(&gradients);

    let (p, word) = reduce_to_alcove(z, rd)?;
    let lambda = rd.alcove_barycentric(&p);
    let support: Vec<usize> = (0..lambda.len()).filter(|&j| lambda[j].is_positive()).collect();
    let mut vertices: Vec<ApartmentPoint> = support
        .iter()
        .map(|&j| word.apply_inverse(&rd.alcove_vertices()[j], rd))
        .collect();
    vertices.sort();
    if vertices.len() != dimension + 1 {
        return Err(Error::Internal(format!(
            "facet of {z}: {} vertices but dimension {dimension}",
            vertices.len()
        )));
    }
    let vertex_type = (dimension == 0).then(|| support[0]);
    Ok(Facet { dimension, vertices, vertex_type, zero_set, positive_set })
}

/// Vertex type (index `i` of the alcove vertex `v_i` it reduces to).
pub fn vertex_type(v: &ApartmentPoint, rd: &RootDatum) -> Result<usize> {
    let f = facet_of(v, rd)?;
    f.vertex_type
        .ok_or_else(|| Error::Contract(format!("{v} is not a vertex (facet dimension {})", f.dimension)))
}

/// Is `z` in the simplicial closure of `region`?
pub fn in_simplicial_closure(z: &ApartmentPoint, region: &Region, rd: &RootDatum) -> Result<bool> {
    let f = facet_of(z, rd)?;
    Ok(region.meets_open(&f.star_constraints()))
}

fn faces_of(facet: &Facet, rd: &RootDatum) -> Result<Vec<Facet>> {
    let mut out = Vec::new();
    for k in 1..=facet.vertices.len() {
        for subset in facet.vertices.iter().cloned().combinations(k) {
            out.push(facet_of(&ApartmentPoint::barycentre(&subset), rd)?);
        }
    }
    Ok(out)
}

/// Every closed facet meeting `region`, together with all of its faces.
/// Sorted by dimension, then vertex list.
pub fn simplicial_closure(region: &Region, rd: &RootDatum) -> Result<Vec<Facet>> {
    rd.check_point(region.base())?;
    let mut out = if region.is_point() {
        faces_of(&facet_of(region.base(), rd)?, rd)?
    } else {
        closure_by_extension(region, rd)?
    };
    out.sort_by(|a, b| a.dimension.cmp(&b.dimension).then_with(|| a.vertices.cmp(&b.vertices)));
    out.dedup();
    Ok(out)
}

fn closure_by_extension(region: &Region, rd: &RootDatum) -> Result<Vec<Facet>> {
    let (lo, hi) = region.bounding_box();
    let lo: Vec<Rational> = lo.iter().map(|c| c - int(1)).collect();
    let hi: Vec<Rational> = hi.iter().map(|c| c + int(1)).collect();

    let mut verts: Vec<Facet> = Vec::new();
    for v in rd.vertex_candidates(&lo, &hi) {
        let f = facet_of(&v, rd)?;
        if f.dimension == 0 && region.meets_open(&f.star_constraints()) {
            verts.push(f);
        }
    }
    let points: Vec<ApartmentPoint> = verts.iter().map(|f| f.vertices[0].clone()).collect();
    let nv = points.len();

    let mut adjacent = vec![vec![false; nv]; nv];
    for i in 0..nv {
        for j in i + 1..nv {
            let pair = [points[i].clone(), points[j].clone()];
            let f = facet_of(&ApartmentPoint::barycentre(&pair), rd)?;
            let ok = f.vertices.len() == 2 && f.vertices.contains(&pair[0]) && f.vertices.contains(&pair[1]);
            adjacent[i][j] = ok;
            adjacent[j][i] = ok;
        }
    }

    // Grow vertex sets in increasing index order; every prefix of a facet's
    // sorted vertex list is itself a facet of the closure.
    let mut out = Vec::new();
    let mut layer: Vec<(Vec<usize>, Facet)> = verts.into_iter().enumerate().map(|(i, f)| (vec![i], f)).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for (set, facet) in layer {
            let last = *set.last().expect("nonempty");
            for w in last + 1..nv {
                if !set.iter().all(|&s| adjacent[s][w]) {
                    continue;
                }
                let mut pts: Vec<ApartmentPoint> = set.iter().map(|&s| points[s].clone()).collect();
                pts.push(points[w].clone());
                let f = facet_of(&ApartmentPoint::barycentre(&pts), rd)?;
                pts.sort();
                if f.vertices == pts && region.meets_open(&f.star_constraints()) {
                    let mut grown = set.clone();
                    grown.push(w);
                    next.push((grown, f));
                }
            }
            out.push(facet);
        }
        layer = next;
    }
    Ok(out)
}

/// Union of the vertex lists of a facet collection, sorted.
pub fn closure_vertices(facets: &[Facet]) -> Vec<ApartmentPoint> {
    let mut v: Vec<ApartmentPoint> = facets.iter().flat_map(|f| f.vertices.iter().cloned()).collect();
    v.sort();
    v.dedup();
    v
}

/// What a radius is measured over.
#[derive(Debug, Clone, Copy)]
pub enum RadiusDomain<'a> {
    Region(&'a Region),
    Facets(&'a [Facet]),
}

impl<'a> From<&'a Region> for RadiusDomain<'a> {
    fn from(r: &'a Region) -> Self {
        RadiusDomain::Region(r)
    }
}

impl<'a> From<&'a [Facet]> for RadiusDomain<'a> {
    fn from(f: &'a [Facet]) -> Self {
        RadiusDomain::Facets(f)
    }
}

impl<'a> From<&'a Vec<Facet>> for RadiusDomain<'a> {
    fn from(f: &'a Vec<Facet>) -> Self {
        RadiusDomain::Facets(f.as_slice())
    }
}

/// `r(Ω, A, x) = max { α(z - x) : z ∈ Ω, α a root }`.
pub fn simplicial_radius<'a>(
    domain: impl Into<RadiusDomain<'a>>,
    x: &ApartmentPoint,
    rd: &RootDatum,
) -> Result<Rational> {
    rd.check_point(x)?;
    match domain.into() {
        RadiusDomain::Region(region) => {
            contract!(region.contains(x), "{x} is not in the region");
            let best = rd
                .roots()
                .iter()
                .map(|a| region.maximize(&a.as_rational()) - a.pair(x))
                .max()
                .expect("root systems are nonempty");
            Ok(best)
        }
        RadiusDomain::Facets(facets) => {
            contract!(
                facets.iter().any(|f| f.closure_contains(x)),
                "{x} is not in the union of the given closed facets"
            );
            Ok(max_root_spread(&closure_vertices(facets), x, rd))
        }
    }
}

fn max_root_spread(points: &[ApartmentPoint], x: &ApartmentPoint, rd: &RootDatum) -> Rational {
    points
        .iter()
        .flat_map(|v| {
            let u = v.sub(x);
            rd.roots().iter().map(move |a| rational::dot_int(a.coeffs(), &u))
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `c(closure{x}, x)` for `x` the barycentre of a facet of the `SL_n`
/// apartment with `k` vertices (a `(k-1)`-dimensional facet), checked
/// against `1 - 1/k`.
pub fn optimal_point_radius_sl_n(n: usize, k: usize) -> Result<Rational> {
    let rd = crate::roots::build_root_datum(Family::A, n)?;
    contract!((1..=n).contains(&k), "need 1 <= k <= {n}, got {k}");
    let vertices = &rd.alcove_vertices()[..k];
    let r = barycentre_radius(vertices, &rd)?;
    let expected = Rational::one() - Rational::new(1, k as i64);
    if r != expected {
        return Err(Error::CrossValidation(format!(
            "SL_{n} facet with {k} vertices: radius {r}, expected {expected}"
        )));
    }
    Ok(r)
}

/// `c(closure{x}, x)` for `x` the barycentre of the given facet vertices.
pub fn barycentre_radius(vertices: &[ApartmentPoint], rd: &RootDatum) -> Result<Rational> {
    let x = ApartmentPoint::barycentre(vertices);
    let closure = simplicial_closure(&Region::point(&x), rd)?;
    simplicial_radius(&closure, &x, rd)
}

/// Arrangement vertices lying in `region`, with their vertex types.
pub fn enumerate_vertices(region: &Region, rd: &RootDatum) -> Result<Vec<(ApartmentPoint, usize)>> {
    rd.check_point(region.base())?;
    let (lo, hi) = region.bounding_box();
    let mut out = Vec::new();
    for v in rd.vertex_candidates(&lo, &hi) {
        if region.contains(&v) {
            let t = vertex_type(&v, rd)?;
            out.push((v, t));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::roots::{build_root_datum, Root};

    fn pt(c: &[(i64, i64)]) -> ApartmentPoint {
        ApartmentPoint::new(c.iter().map(|&(a, b)| q(a, b)).collect())
    }

    fn c2() -> RootDatum {
        build_root_datum(Family::C, 2).unwrap()
    }

    #[test]
    fn omega_is_a_cube_in_type_c() {
        let rd = c2();
        let x = pt(&[(1, 4), (1, 4)]);
        let omega = omega_region(&x, q(1, 10), &rd).unwrap();
        let (lo, hi) = omega.bounding_box();
        assert_eq!(lo, vec![q(1, 4) - q(1, 20); 2]);
        assert_eq!(hi, vec![q(1, 4) + q(1, 20); 2]);
        assert_eq!(omega.polytope_vertices().len(), 4);
    }

    #[test]
    fn omega_zero_is_a_point() {
        let rd = c2();
        let x = pt(&[(1, 3), (1, 7)]);
        let omega = omega_region(&x, Rational::zero(), &rd).unwrap();
        assert!(omega.is_point());
        assert_eq!(omega.polytope_vertices(), vec![x]);
        assert!(matches!(omega_region(&pt(&[(0, 1), (0, 1)]), q(-1, 2), &rd), Err(Error::Contract(_))));
    }

    #[test]
    fn facet_examples() {
        let rd = c2();
        let f = facet_of(&pt(&[(1, 4), (1, 4)]), &rd).unwrap();
        assert_eq!(f.dimension, 1);
        assert_eq!(f.vertices, vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 2), (1, 2)])]);
        let grads: Vec<&Root> = f.zero_set.iter().map(|p| &p.gradient).collect();
        assert_eq!(grads, vec![&Root(vec![-1, 1]), &Root(vec![1, -1])]);

        let f = facet_of(&pt(&[(1, 2), (1, 2)]), &rd).unwrap();
        assert_eq!((f.dimension, f.vertex_type), (0, Some(2)));

        let f = facet_of(&pt(&[(1, 3), (1, 6)]), &rd).unwrap();
        assert_eq!(f.dimension, 2);
        assert!(f.zero_set.is_empty());
    }

    #[test]
    fn closure_of_points() {
        let rd = c2();
        let v = pt(&[(1, 2), (0, 1)]);
        let cl = simplicial_closure(&Region::point(&v), &rd).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].vertices, vec![v]);

        let x = pt(&[(1, 4), (1, 4)]);
        let cl = simplicial_closure(&Region::point(&x), &rd).unwrap();
        assert_eq!(cl.len(), 3);
        assert_eq!(cl[2].dimension, 1);
    }

    #[test]
    fn radius_contract() {
        let rd = c2();
        let omega = omega_region(&pt(&[(1, 4), (1, 4)]), q(1, 10), &rd).unwrap();
        assert!(matches!(
            simplicial_radius(&omega, &pt(&[(0, 1), (0, 1)]), &rd),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn sl_n_small_cases() {
        assert_eq!(optimal_point_radius_sl_n(2, 1).unwrap(), Rational::zero());
        assert_eq!(optimal_point_radius_sl_n(3, 2).unwrap(), q(1, 2));
        assert_eq!(optimal_point_radius_sl_n(4, 3).unwrap(), q(2, 3));
        assert!(optimal_point_radius_sl_n(3, 0).is_err());
        assert!(optimal_point_radius_sl_n(3, 4).is_err());
    }

    #[test]
    fn vertices_of_a_non_vertex_point() {
        let rd = c2();
        let r = Region::point(&pt(&[(1, 4), (1, 4)]));
        assert!(enumerate_vertices(&r, &rd).unwrap().is_empty());
    }

    #[test]
    fn unbounded_region_rejected() {
        let x = pt(&[(0, 1), (0, 1)]);
        let h = HalfSpace::new(vec![int(1), int(0)], int(1));
        assert!(matches!(Region::new(x, vec![h], vec![]), Err(Error::Contract(_))));
    }
}
