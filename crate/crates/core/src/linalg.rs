//! Exact Gaussian elimination over `Q`.

use num_traits::Zero;

use crate::rational::Rational;

/// Row-reduces in place and returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..m[r].len() {
                    let delta = f * m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&c| Rational::from_integer(c)).collect())
        .collect();
    rank(&m)
}

/// Solves `A z = b` when the solution is unique; `None` otherwise.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first()?.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(*rhs);
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, ncols + 1);
    if pivots.len() != ncols || pivots.contains(&ncols) {
        return None;
    }
    Some((0..ncols).map(|i| m[i][ncols]).collect())
}
