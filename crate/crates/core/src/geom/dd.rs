//! Double description: generators of a polyhedral cone `{z : A z ≤ 0, E z = 0}`.
//!
//! The cone is maintained as `lin(lines) + cone(rays)`. Constraints are added
//! one at a time; a constraint that cuts a line turns that line into a ray,
//! otherwise rays are split by sign and adjacent pairs are combined. Adjacency
//! is decided combinatorially from the zero sets of the processed constraints.

use num::{Signed, Zero};

use crate::scalar::{dot, primitive, Point, Scalar};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConeGenerators {
    pub lines: Vec<Point>,
    pub rays: Vec<Point>,
}

#[derive(Clone)]
struct Ray {
    v: Point,
    zeros: BitSet,
}

#[derive(Clone, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn combine(p: &Point, ap: &Scalar, q: &Point, aq: &Scalar) -> Point {
    // ap > 0 > aq: (ap) q − (aq) p has zero product with the constraint
    let v: Point = p.iter().zip(q).map(|(x, y)| ap * y - aq * x).collect();
    primitive(&v)
}

/// Generators of `{z ∈ ℝ^dim : a·z ≤ 0 ∀a ∈ ineqs, e·z = 0 ∀e ∈ eqs}`.
pub fn cone_generators(dim: usize, ineqs: &[Point], eqs: &[Point]) -> ConeGenerators {
    let mut lines: Vec<Point> = (0..dim)
        .map(|i| {
            let mut v = vec![Scalar::zero(); dim];
            v[i] = Scalar::from_integer(1.into());
            v
        })
        .collect();

    for e in eqs {
        if let Some(pi) = lines.iter().position(|l| !dot(e, l).is_zero()) {
            let pivot = lines.remove(pi);
            let ep = dot(e, &pivot);
            for l in lines.iter_mut() {
                let el = dot(e, l);
                if !el.is_zero() {
                    let f = el / &ep;
                    for (x, y) in l.iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
    }

    // every face spanned by two adjacent rays has dimension 2 + lines, so its
    // tight constraints have rank span_dim - lines - 2
    let span_dim = lines.len();
    let m = ineqs.len();
    let mut rays: Vec<Ray> = Vec::new();
    for (k, a) in ineqs.iter().enumerate() {
        if let Some(pi) = lines.iter().position(|l| !dot(a, l).is_zero()) {
            let pivot = lines.remove(pi);
            let ap = dot(a, &pivot);
            for l in lines.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    let f = al / &ap;
                    for (x, y) in l.iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, &r.v);
                if !ar.is_zero() {
                    let f = ar / &ap;
                    let v: Point = r.v.iter().zip(&pivot).map(|(x, y)| x - &f * y).collect();
                    r.v = primitive(&v);
                }
                r.zeros.set(k);
            }
            let dir = if ap.is_negative() { pivot } else { pivot.iter().map(|x| -x).collect() };
            let mut zeros = BitSet::new(m);
            for j in 0..k {
                zeros.set(j);
            }
            rays.push(Ray { v: primitive(&dir), zeros });
            continue;
        }

        let vals: Vec<Scalar> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + lines.len() + 2 < span_dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.subset_of(&r.zeros));
                if adjacent {
                    let v = combine(&rays[p].v, &vals[p], &rays[q].v, &vals[q]);
                    let mut zeros = common;
                    zeros.set(k);
                    next.push(Ray { v, zeros });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + next.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                r.zeros.set(k);
                kept.push(r);
            } else if vals[i].is_negative() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    ConeGenerators {
        lines,
        rays: rays.into_iter().map(|r| r.v).collect(),
    }
}
