//! A small exact linear-programming solver.
//!
//! Dense tableau simplex over `Q` with Bland's rule, so it terminates on
//! degenerate problems. Variables are free; they are split internally into
//! differences of nonnegative parts. Problem sizes here are tiny (at most a
//! few hundred constraints in at most eight unknowns).

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// `coeffs · z <= rhs` (or `=` / `<` depending on where it is passed).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self { coeffs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    v: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, l: usize, e: usize) {
        let ale = self.a[l][e];
        let inv = ale.recip();
        self.b[l] *= inv;
        for (j, x) in self.a[l].iter_mut().enumerate() {
            if j != e {
                *x *= inv;
            }
        }
        self.a[l][e] = inv;

        let (bl, row_l) = (self.b[l], self.a[l].clone());
        for i in 0..self.a.len() {
            if i == l {
                continue;
            }
            let f = self.a[i][e];
            if f.is_zero() {
                continue;
            }
            self.b[i] -= f * bl;
            for (j, x) in self.a[i].iter_mut().enumerate() {
                if j != e {
                    *x -= f * row_l[j];
                }
            }
            self.a[i][e] = -f * row_l[e];
        }

        let f = self.c[e];
        if !f.is_zero() {
            self.v += f * bl;
            for (j, x) in self.c.iter_mut().enumerate() {
                if j != e {
                    *x -= f * row_l[j];
                }
            }
            self.c[e] = -f * row_l[e];
        }
        std::mem::swap(&mut self.basic[l], &mut self.nonbasic[e]);
    }

    /// Runs to optimality; `false` means unbounded.
    fn run(&mut self) -> bool {
        loop {
            let entering = (0..self.c.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(e) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][e].is_positive() {
                    let ratio = self.b[i] / self.a[i][e];
                    let better = match &leaving {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basic[i] < self.basic[*li])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            match leaving {
                Some((l, _)) => self.pivot(l, e),
                None => return false,
            }
        }
    }
}

/// Maximizes `objective · x` over `x >= 0`, `a x <= b`.
fn maximize_standard(objective: &[Rational], a: Vec<Vec<Rational>>, b: Vec<Rational>) -> LpOutcome {
    let nv = objective.len();
    let m = a.len();
    let mut t = Tableau {
        a,
        b,
        c: objective.to_vec(),
        v: Rational::zero(),
        basic: (nv..nv + m).collect(),
        nonbasic: (0..nv).collect(),
    };

    let min_row = (0..m).min_by(|&i, &j| t.b[i].cmp(&t.b[j]));
    if let Some(l) = min_row.filter(|&l| t.b[l].is_negative()) {
        // Phase one: auxiliary variable x_aux, maximize -x_aux.
        let aux = nv + m;
        for row in t.a.iter_mut() {
            row.push(-Rational::one());
        }
        t.nonbasic.push(aux);
        t.c = vec![Rational::zero(); nv + 1];
        t.c[nv] = -Rational::one();
        t.pivot(l, nv);
        t.run();
        if !t.v.is_zero() {
            return LpOutcome::Infeasible;
        }
        if let Some(row) = t.basic.iter().position(|&id| id == aux) {
            let col = (0..t.nonbasic.len())
                .find(|&j| !t.a[row][j].is_zero())
                .expect("auxiliary row cannot be all zero");
            t.pivot(row, col);
        }
        let col = t.nonbasic.iter().position(|&id| id == aux).expect("aux is nonbasic");
        for row in t.a.iter_mut() {
            row.remove(col);
        }
        t.nonbasic.remove(col);

        t.c = vec![Rational::zero(); nv];
        t.v = Rational::zero();
        for (k, ck) in objective.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            if let Some(j) = t.nonbasic.iter().position(|&id| id == k) {
                t.c[j] += *ck;
            } else if let Some(i) = t.basic.iter().position(|&id| id == k) {
                t.v += *ck * t.b[i];
                for j in 0..nv {
                    let delta = *ck * t.a[i][j];
                    t.c[j] -= delta;
                }
            }
        }
    }

    if !t.run() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); nv];
    for (i, &id) in t.basic.iter().enumerate() {
        if id < nv {
            x[id] = t.b[i];
        }
    }
    LpOutcome::Optimal { value: t.v, point: x }
}

/// Maximizes `objective · z` over free `z` subject to `le` (`<=`) and `eq` (`=`).
pub fn maximize(
    objective: &[Rational],
    le: &[LinearConstraint],
    eq: &[LinearConstraint],
) -> LpOutcome {
    let d = objective.len();
    let split = |coeffs: &[Rational], sign: Rational| -> Vec<Rational> {
        coeffs
            .iter()
            .map(|c| *c * sign)
            .chain(coeffs.iter().map(|c| -*c * sign))
            .collect()
    };
    let mut a = Vec::with_capacity(le.len() + 2 * eq.len());
    let mut b = Vec::with_capacity(a.capacity());
    for con in le {
        debug_assert_eq!(con.coeffs.len(), d);
        a.push(split(&con.coeffs, Rational::one()));
        b.push(con.rhs);
    }
    for con in eq {
        debug_assert_eq!(con.coeffs.len(), d);
        a.push(split(&con.coeffs, Rational::one()));
        b.push(con.rhs);
        a.push(split(&con.coeffs, -Rational::one()));
        b.push(-con.rhs);
    }
    let obj = split(objective, Rational::one());
    match maximize_standard(&obj, a, b) {
        LpOutcome::Optimal { value, point } => {
            let z = (0..d).map(|i| point[i] - point[i + d]).collect();
            LpOutcome::Optimal { value, point: z }
        }
        other => other,
    }
}

/// Is `{le, eq} ∩ {strict: coeffs · z < rhs}` nonempty?
pub fn strictly_feasible(
    le: &[LinearConstraint],
    eq: &[LinearConstraint],
    strict: &[LinearConstraint],
) -> bool {
    let d = le
        .iter()
        .chain(eq)
        .chain(strict)
        .map(|c| c.coeffs.len())
        .next()
        .unwrap_or(0);
    let widen = |c: &LinearConstraint, t: Rational| {
        let mut coeffs = c.coeffs.clone();
        coeffs.push(t);
        LinearConstraint::new(coeffs, c.rhs)
    };
    let mut closed: Vec<LinearConstraint> = le.iter().map(|c| widen(c, Rational::zero())).collect();
    closed.extend(strict.iter().map(|c| widen(c, Rational::one())));
    let mut cap = vec![Rational::zero(); d + 1];
    cap[d] = Rational::one();
    closed.push(LinearConstraint::new(cap.clone(), Rational::one()));
    let eqs: Vec<LinearConstraint> = eq.iter().map(|c| widen(c, Rational::zero())).collect();
    match maximize(&cap, &closed, &eqs) {
        LpOutcome::Optimal { value, .. } => value.is_positive(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("slack variable is capped at 1"),
    }
}
