//! Exact Gaussian elimination over the rationals.

use num::{Signed, Zero};

use crate::scalar::{Point, Scalar};

/// Reduced row echelon form of the row span.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rows: Vec<Point>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn new(rows: &[Point], ncols: usize) -> Rref {
        let mut m: Vec<Point> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Scalar::from_integer(1.into()) / &m[r][c];
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..ncols {
                        let delta = &f * &m[r][j];
                        m[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Rref { rows: m, pivots, ncols }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical representative of `v` modulo the row span: pivot columns are zeroed.
    pub fn reduce(&self, v: &[Scalar]) -> Point {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (o, x) in out.iter_mut().zip(row) {
                    *o -= &f * x;
                }
            }
        }
        out
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Point> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[f] = Scalar::from_integer(1.into());
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank(rows: &[Point], ncols: usize) -> usize {
    Rref::new(rows, ncols).rank()
}

pub fn nullspace(rows: &[Point], ncols: usize) -> Vec<Point> {
    Rref::new(rows, ncols).nullspace()
}

/// Affine dimension of a point set (−1 for the empty set, returned as `None`).
pub fn affine_dim(points: &[Point]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Point> = points[1..].iter().map(|p| crate::scalar::sub(p, first)).collect();
    Some(rank(&diffs, first.len()))
}

pub fn det(a: &[Point]) -> Scalar {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Scalar::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    d
}

/// Solves `a · X = rhs` for a square nonsingular `a`; `rhs` has one row per
/// equation and any number of columns. Returns `None` when `a` is singular.
pub fn solve(a: &[Point], rhs: &[Point]) -> Option<Vec<Point>> {
    let n = a.len();
    let m = rhs.first().map_or(0, Vec::len);
    let aug: Vec<Point> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| row.iter().chain(r).cloned().collect())
        .collect();
    let red = Rref::new(&aug, n + m);
    if red.pivots.len() < n || red.pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    Some(red.rows.iter().map(|row| row[n..].to_vec()).collect())
}

pub fn abs_max(rows: &[Point]) -> Scalar {
    rows.iter()
        .flat_map(|r| r.iter())
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Scalar::zero)
}
