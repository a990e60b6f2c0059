//! Acceptance run: one PASS/FAIL line per criterion, with timings.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use toral::apartment::{
    closure_vertices, facet_of, omega_region, optimal_point_radius_sl_n, simplicial_closure, simplicial_radius,
    Region,
};
use toral::census::{run_census, strong_unicity_verdict, CensusInput};
use toral::oracle::{
    lemma_stabilizer_check, oracle_fixed_region, parahoric_pattern, remark_orbit_check, OracleParams, ROUTE_LOWER,
    ROUTE_PRINTED,
};
use toral::rational::{int, q, Rational};
use toral::roots::{build_root_datum, ApartmentPoint, Family};
use toral::torus::{attachment_point, fixed_region, is_single_facet_closure, torus_radius, TorusSpec};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn spec(m: usize, l: usize, n: usize) -> Result<TorusSpec, String> {
    TorusSpec::from_counts(m, l, n).map_err(err)
}

fn figure_geometry() -> Outcome {
    let s: TorusSpec = "r2".parse().map_err(err)?;
    let rd = s.root_datum();
    let x = attachment_point(&s);
    ensure!(x == pt(&[(1, 4), (1, 4)]), "attachment point {x}");
    let square: BTreeSet<ApartmentPoint> = half_grid(2, 0, 1).iter().map(|h| half_point(h)).collect();
    let fixed: BTreeSet<ApartmentPoint> = fixed_region(&s).polytope_vertices().into_iter().collect();
    ensure!(fixed == square, "fixed region vertices {fixed:?}");
    let omega = omega_region(&x, q(1, 10), &rd).map_err(err)?;
    let closure = simplicial_closure(&omega, &rd).map_err(err)?;
    let got: BTreeSet<ApartmentPoint> = closure_vertices(&closure).into_iter().collect();
    ensure!(got == square, "closure vertices {got:?}");
    Ok(format!("closure has {} facets on the 4 square vertices", closure.len()))
}

fn radius_values() -> Outcome {
    let r2: TorusSpec = "r2".parse().map_err(err)?;
    ensure!(torus_radius(&r2) == q(1, 2), "c_T(r2) = {}", torus_radius(&r2));
    let mut checked = 1;
    for n in 1..=6 {
        for m in 0..=n {
            let s = spec(m, 0, n)?;
            ensure!(torus_radius(&s) == int(0), "c_T({s}) = {}", torus_radius(&s));
            checked += 1;
        }
    }
    Ok(format!("{checked} specs"))
}

fn type_counts() -> Outcome {
    let r = run_census(&CensusInput::new("r2".parse().map_err(err)?, q(3, 5)).map_err(err)?).map_err(err)?;
    ensure!(r.counts[1] == 2, "r2 at 3/5: {} types on v1", r.counts[1]);
    ensure!(!r.strong_unicity, "r2 at 3/5: strong unicity reported");
    let mut checked = 0;
    for n in 1..=8 {
        for l in 0..=n.min(6) {
            for m in 0..=n - l {
                let s = spec(m, l, n)?;
                let r = run_census(&CensusInput::new(s.clone(), q(3, 5)).map_err(err)?).map_err(err)?;
                for (i, &c) in r.counts.iter().enumerate() {
                    let want = if i >= m { binomial(l, i - m) } else { 0 };
                    ensure!(c == want, "{s}: count(v{i}) = {c}, expected {want}");
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} specs up to n = 8"))
}

fn unicity_iff_single_facet() -> Outcome {
    let mut checked = 0;
    for (m, l, n0) in all_specs(6) {
        let s = spec(m, l, m + l + n0)?;
        let input = CensusInput::new(s.clone(), int(1)).map_err(err)?;
        let su = strong_unicity_verdict(&input).map_err(err)?.holds;
        let sf = is_single_facet_closure(&s);
        let report = run_census(&input).map_err(err)?;
        let all_le_one = report.counts.iter().all(|&c| c <= 1);
        ensure!(su == (l <= 1) && sf == (l <= 1) && all_le_one == (l <= 1), "{s}: su={su} sf={sf} counts<=1={all_le_one}");
        checked += 1;
    }
    Ok(format!("{checked} specs"))
}

/// Fundamental coweights of SL_n in trace-zero coordinates.
fn sl_alcove(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|j| (0..n).map(|i| int(i64::from(i < j)) - q(j as i64, n as i64)).collect())
        .collect()
}

/// `max α(v - x)` over the face vertices, `x` their barycentre.
fn brute_face_radius(face: &[Vec<Rational>]) -> Rational {
    let n = face[0].len();
    let k = int(face.len() as i64);
    let x: Vec<Rational> = (0..n).map(|i| face.iter().map(|v| v[i]).sum::<Rational>() / k).collect();
    let mut best = int(0);
    for v in face {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    best = best.max((v[i] - x[i]) - (v[j] - x[j]));
                }
            }
        }
    }
    best
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn sl_radius() -> Outcome {
    let mut checked = 0;
    for n in 2..=6 {
        let verts = sl_alcove(n);
        for k in 1..=n {
            let want = int(1) - q(1, k as i64);
            let got = optimal_point_radius_sl_n(n, k).map_err(err)?;
            ensure!(got == want, "SL_{n}, k = {k}: {got}");
            for face in subsets(n, k) {
                let f: Vec<Vec<Rational>> = face.iter().map(|&i| verts[i].clone()).collect();
                let brute = brute_face_radius(&f);
                ensure!(brute == want, "SL_{n} face {face:?}: brute force gives {brute}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, k) pairs, every face cross-checked"))
}

fn radius_law() -> Outcome {
    let pairs: [(&[(i64, i64)], (i64, i64)); 20] = [
        (&[(1, 4), (1, 4)], (1, 10)),
        (&[(1, 4), (1, 4)], (3, 5)),
        (&[(0, 1), (0, 1)], (1, 2)),
        (&[(1, 2), (0, 1)], (1, 4)),
        (&[(1, 3), (1, 6)], (1, 7)),
        (&[(1, 3), (1, 6)], (5, 3)),
        (&[(1, 2), (1, 2)], (2, 1)),
        (&[(3, 8), (1, 8)], (1, 8)),
        (&[(2, 5), (1, 5)], (3, 10)),
        (&[(1, 5), (1, 5)], (7, 9)),
        (&[(1, 4)], (1, 3)),
        (&[(0, 1)], (5, 4)),
        (&[(1, 2)], (1, 100)),
        (&[(1, 2), (1, 4), (0, 1)], (1, 10)),
        (&[(1, 3), (1, 4), (1, 5)], (1, 6)),
        (&[(1, 2), (1, 2), (1, 2)], (3, 4)),
        (&[(1, 7), (1, 7), (0, 1)], (2, 3)),
        (&[(1, 2), (1, 3), (1, 6), (0, 1)], (1, 5)),
        (&[(1, 4), (1, 4), (1, 4), (1, 4)], (1, 2)),
        (&[(3, 7), (2, 7), (1, 7), (0, 1), (0, 1)], (2, 7)),
    ];
    for (coords, (a, b)) in pairs {
        let x = pt(coords);
        let s = q(a, b);
        let rd = build_root_datum(Family::C, coords.len()).map_err(err)?;
        let omega = omega_region(&x, s, &rd).map_err(err)?;
        let lp = simplicial_radius(&omega, &x, &rd).map_err(err)?;
        let by_vertices = omega
            .polytope_vertices()
            .iter()
            .flat_map(|v| rd.roots().iter().map(|al| al.pair(v) - al.pair(&x)).collect::<Vec<_>>())
            .max()
            .ok_or("no vertices")?;
        ensure!(lp == s && by_vertices == s, "x = {x}, s = {s}: LP {lp}, vertices {by_vertices}");
    }
    let mut grid_points = 0;
    let mut worst = int(0);
    for n in 1..=4 {
        let rd = build_root_datum(Family::C, n).map_err(err)?;
        let values = farey_between(int(0), q(1, 2), 8);
        let mut tuples: Vec<Vec<Rational>> = vec![vec![]];
        for _ in 0..n {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    values
                        .iter()
                        .filter(|&&v| t.last().is_none_or(|&l| v <= l))
                        .map(|&v| {
                            let mut t = t.clone();
                            t.push(v);
                            t
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        for t in tuples {
            let x = ApartmentPoint::new(t);
            let closure = simplicial_closure(&Region::point(&x), &rd).map_err(err)?;
            let r = simplicial_radius(&closure, &x, &rd).map_err(err)?;
            let face = facet_of(&x, &rd).map_err(err)?;
            let brute = face
                .vertices
                .iter()
                .flat_map(|v| rd.roots().iter().map(|al| al.pair(v) - al.pair(&x)).collect::<Vec<_>>())
                .max()
                .unwrap_or_else(|| int(0));
            ensure!(r == brute, "x = {x}: closure route {r}, facet route {brute}");
            ensure!(r < int(1), "x = {x}: radius {r}");
            worst = worst.max(r);
            grid_points += 1;
        }
    }
    Ok(format!("20 pairs; {grid_points} grid points, largest closure radius {worst}"))
}

fn printed_patterns() -> Outcome {
    let grid = |rows: &[&str]| -> Vec<Vec<String>> {
        rows.iter().map(|r| r.split_whitespace().map(String::from).collect()).collect()
    };
    let gc = parahoric_pattern(&pt(&[(1, 3), (1, 6)]), 2, int(0)).map_err(err)?;
    ensure!(gc.symbols() == grid(&["O O O O", "p O O O", "p p O p", "p p O O"]), "G_C:\n{gc}");
    let gwc = parahoric_pattern(&pt(&[(1, 6), (1, 3)]), 2, int(0)).map_err(err)?;
    ensure!(gwc.symbols() == grid(&["O p O O", "O O O O", "p p O O", "p p p O"]), "G_wC:\n{gwc}");
    Ok("both 4x4 patterns match".into())
}

fn oracle_cross_validation() -> Outcome {
    let mut checked = 0;
    for qq in [3u64, 5] {
        let p = OracleParams { q: qq, n_trunc: 8, samples: 64, seed: 2024 };
        for (m, l, n0) in all_specs(3) {
            let s = spec(m, l, m + l + n0)?;
            let out = oracle_fixed_region(&s, &p).map_err(err)?;
            ensure!(out.agrees(), "{s}, q = {qq}: sampled {:?} vs closed form {:?}", out.survivors, out.expected);
            checked += 1;
        }
        let r = remark_orbit_check(&p).map_err(err)?;
        ensure!(r.verdict(), "remark orbit, q = {qq}: missing {:?}", r.missing);
        for route in [ROUTE_PRINTED, ROUTE_LOWER] {
            let reps: BTreeSet<u64> = r.witnesses.iter().filter(|w| w.route == route).map(|w| w.a).collect();
            ensure!(reps.len() as u64 == qq - 1, "q = {qq}, {route}: witnesses for {reps:?}");
        }
    }
    Ok(format!("{checked} fixed-region runs; orbit witnesses for every unit class at q = 3, 5"))
}

fn stabilizer_sampling() -> Outcome {
    let p = OracleParams { q: 3, n_trunc: 8, samples: 1000, seed: 42 };
    let cases = [(pt(&[(1, 4), (1, 4)]), q(1, 10)), (pt(&[(1, 2), (1, 4), (0, 1)]), q(1, 10))];
    let mut detail = Vec::new();
    for (x, s) in cases {
        let out = lemma_stabilizer_check(&x, s, &p).map_err(err)?;
        ensure!(out.passed(), "x = {x}, s = {s}: {:?}", out.failures.first());
        detail.push(format!("{} vertices at {x}", out.vertices.len()));
    }
    Ok(format!("1000 samples each; {}", detail.join(", ")))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "figure geometry", limit: secs(1), run: figure_geometry },
        Criterion { id: 2, name: "torus radius values", limit: None, run: radius_values },
        Criterion { id: 3, name: "type counts", limit: secs(10), run: type_counts },
        Criterion { id: 4, name: "strong unicity iff single facet", limit: None, run: unicity_iff_single_facet },
        Criterion { id: 5, name: "SL_n optimal radius", limit: None, run: sl_radius },
        Criterion { id: 6, name: "radius law", limit: None, run: radius_law },
        Criterion { id: 7, name: "printed parahoric patterns", limit: secs(1), run: printed_patterns },
        Criterion { id: 8, name: "oracle cross-validation", limit: secs(60), run: oracle_cross_validation },
        Criterion { id: 9, name: "stabilizer sampling", limit: secs(60), run: stabilizer_sampling },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let late = c.limit.is_some_and(|l| took > l);
        let limit = c.limit.map_or(String::new(), |l| format!(" < {}s", l.as_secs()));
        let (tag, detail) = match (&outcome, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("too slow; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {} {} [{:.3}s{limit}] {detail}", c.id, c.name, took.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
