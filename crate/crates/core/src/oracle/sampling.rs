//! Random elements of the product tori and of Moy-Prasad groups.

use rand::Rng;

use super::matrix::{root_positions, LaurentMatrix};
use super::series::{check_field, least_non_residue, TruncSeries};
use crate::error::{contract, Result};
use crate::torus::{FactorKind, TorusSpec};

/// Solves `a^2 - b^2 γ t = 1` for `a ≡ 1 mod t`.
pub fn hensel_torus_element(gamma: i64, b: &TruncSeries, q: u64, prec: i32) -> Result<(TruncSeries, TruncSeries)> {
    check_field(q)?;
    contract!(prec >= 2, "truncation order must be >= 2, got {prec}");
    contract!(b.q() == q, "b lives over F_{}, expected F_{q}", b.q());
    contract!(b.valuation_at_least(0), "b must be integral");
    let b = b.truncate(prec);
    let u = &TruncSeries::one(q, prec) + &(&b * &b).scale(gamma).shift(1);
    let a = u.truncate(prec).sqrt_principal_unit()?;
    Ok((a, b))
}

/// Uniform coefficients on exponents `min_val..prec`; with `exact` the
/// leading one is nonzero, so the valuation is exactly `min_val`.
pub fn random_series<R: Rng>(rng: &mut R, q: u64, prec: i32, min_val: i32, exact: bool) -> TruncSeries {
    let len = (prec - min_val).max(0) as usize;
    let coeffs: Vec<i64> = (0..len)
        .map(|k| if k == 0 && exact { rng.gen_range(1..q) as i64 } else { rng.gen_range(0..q) as i64 })
        .collect();
    TruncSeries::from_coeffs(q, min_val, prec, &coeffs)
}

fn random_sign<R: Rng>(rng: &mut R, s: TruncSeries) -> TruncSeries {
    if rng.gen_bool(0.5) {
        -&s
    } else {
        s
    }
}

/// Samples the torus `T = Π T_j` of a [`TorusSpec`] inside `Sp_{2n}`, the
/// `j`-th factor acting on basis vectors `j` and `j + n`.
///
/// Ramified factors use `[[a, b], [γbt, a]]` with `a^2 - γb^2 t = 1`; `γ`
/// alternates between 1 and a non-residue over the ramified slots.
/// Unramified factors are norm-one elements `a^2 - εb^2 = 1` (`ε` a
/// non-residue) placed as `[[a, εb], [b, a]]` at `0` and as
/// `[[a, εb/t], [bt, a]]` at `1/2`.
#[derive(Debug, Clone)]
pub struct TorusSampler {
    spec: TorusSpec,
    q: u64,
    prec: i32,
    eps: i64,
}

impl TorusSampler {
    pub fn new(spec: TorusSpec, q: u64, prec: i32) -> Result<Self> {
        check_field(q)?;
        contract!(prec >= 2, "truncation order must be >= 2, got {prec}");
        let eps = least_non_residue(q) as i64;
        Ok(TorusSampler { spec, q, prec, eps })
    }

    pub fn spec(&self) -> &TorusSpec {
        &self.spec
    }

    pub fn gamma(&self, ramified_index: usize) -> i64 {
        if ramified_index % 2 == 0 {
            1
        } else {
            self.eps
        }
    }

    /// `(a, b)` with `a^2 - εb^2 = 1`, via `a = (u^2 + εv^2)/(u^2 - εv^2)`,
    /// `b = 2uv/(u^2 - εv^2)` for units `u, v`.
    fn norm_one<R: Rng>(&self, rng: &mut R) -> (TruncSeries, TruncSeries) {
        let (q, p) = (self.q, self.prec);
        let u = random_series(rng, q, p, 0, true);
        let v = random_series(rng, q, p, 0, true);
        let u2 = &u * &u;
        let ev2 = (&v * &v).scale(self.eps);
        let d = (&u2 - &ev2).inverse().expect("u^2 - εv^2 is a unit");
        let a = &(&u2 + &ev2) * &d;
        let b = &(&u * &v).scale(2) * &d;
        (a, b)
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> LaurentMatrix {
        let n = self.spec.n();
        let (q, p) = (self.q, self.prec);
        let mut g = LaurentMatrix::zero(2 * n, q, p);
        let mut ramified = 0;
        for (j, kind) in self.spec.factors().iter().enumerate() {
            let (a, upper, lower) = match kind {
                FactorKind::RamifiedMid => {
                    let gamma = self.gamma(ramified);
                    ramified += 1;
                    let b = random_series(rng, q, p, 0, false);
                    let (a, b) = hensel_torus_element(gamma, &b, q, p).expect("valid field and integral b");
                    let lower = b.scale(gamma).shift(1);
                    (a, b, lower)
                }
                FactorKind::UnramifiedZero => {
                    let (a, b) = self.norm_one(rng);
                    (a, b.scale(self.eps), b)
                }
                FactorKind::UnramifiedHalf => {
                    let (a, b) = self.norm_one(rng);
                    (a, b.scale(self.eps).shift(-1), b.shift(1))
                }
            };
            let a = random_sign(rng, a);
            g.set(j, j, a.clone());
            g.set(j + n, j + n, a);
            g.set(j, j + n, upper);
            g.set(j + n, j, lower);
        }
        g
    }
}

/// A root vector `X_α` of `sp_{2n}`: `E_p` or `E_p ± E_p'` over the
/// positions carrying `α`, with the sign making `ᵗX J + J X = 0`.
pub fn root_vector(n: usize, root: &[i64]) -> Vec<Vec<i64>> {
    let pos = root_positions(n, root);
    let size = 2 * n;
    let build = |sigma: i64| {
        let mut x = vec![vec![0i64; size]; size];
        for (k, &(i, j)) in pos.iter().enumerate() {
            x[i][j] = if k == 0 { 1 } else { sigma };
        }
        x
    };
    let in_lie_algebra = |x: &Vec<Vec<i64>>| {
        // (JX)_{ij} = s_i X_{σ(i) j} with J e_{i+n} = e_i, J e_i = -e_{i+n}.
        let jx = |i: usize, j: usize| if i < n { x[i + n][j] } else { -x[i - n][j] };
        (0..size).all(|i| (0..size).all(|j| jx(j, i) == jx(i, j)))
    };
    [1, -1]
        .into_iter()
        .map(build)
        .find(in_lie_algebra)
        .expect("every root has a root vector in sp_2n")
}

/// `I + c X` for a root vector `X` (which squares to zero).
pub fn root_group_element(n: usize, root: &[i64], c: &TruncSeries) -> LaurentMatrix {
    let x = root_vector(n, root);
    let prec = c.prec();
    let mut g = LaurentMatrix::identity(2 * n, c.q(), prec);
    for (i, row) in x.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                g.set(i, j, c.scale(v));
            }
        }
    }
    g
}

/// `diag(d_1, .., d_n, d_1^-1, .., d_n^-1)`.
pub fn diagonal_element(d: &[TruncSeries]) -> LaurentMatrix {
    let n = d.len();
    let q = d[0].q();
    let prec = d.iter().map(|s| s.prec()).min().unwrap_or(0);
    let mut g = LaurentMatrix::identity(2 * n, q, prec);
    for (i, di) in d.iter().enumerate() {
        g.set(i, i, di.clone());
        g.set(i + n, i + n, di.inverse().expect("diagonal entries are units"));
    }
    g
}
