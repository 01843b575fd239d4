//! Differences of convex PL functions with full domain.

use num::{Signed, Zero};

use super::conjugate::recession_function;
use super::function::{AffineForm, PolyConvexFunction};
use crate::error::{check_dim, Error, Result};
use crate::geom::{Halfspace, Polyhedron};
use crate::scalar::{dot, sub, Point, Scalar};

/// `φ = g − h` with `g`, `h` convex, PL and finite everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcPair {
    pub g: PolyConvexFunction,
    pub h: PolyConvexFunction,
}

impl DcPair {
    pub fn new(g: PolyConvexFunction, h: PolyConvexFunction) -> Result<Self> {
        check_dim(g.n(), h.n())?;
        if !g.domain_is_all() || !h.domain_is_all() {
            return Err(Error::NotConvex("DC parts must be finite convex functions on all of R^n".into()));
        }
        Ok(DcPair { g, h })
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        Ok(self.g.eval_finite(x)? - self.h.eval_finite(x)?)
    }

    /// `(g + r, h + r)` for a convex `r` with full domain.
    pub fn shifted(&self, r: &PolyConvexFunction) -> Result<Self> {
        DcPair::new(self.g.add(r)?, self.h.add(r)?)
    }

    pub fn scaled(&self, t: &Scalar) -> Result<Self> {
        if t.is_negative() {
            return DcPair::new(self.h.scale(&-t)?, self.g.scale(&-t)?);
        }
        if t.is_zero() {
            let z = PolyConvexFunction::affine(vec![Scalar::zero(); self.n()], Scalar::zero())?;
            return DcPair::new(z.clone(), z);
        }
        DcPair::new(self.g.scale(t)?, self.h.scale(t)?)
    }

    /// `φ + ψ` as `(g + g', h + h')`.
    pub fn sum(&self, other: &DcPair) -> Result<Self> {
        DcPair::new(self.g.add(&other.g)?, self.h.add(&other.h)?)
    }

    /// `g − h` is bounded iff both parts grow alike at infinity.
    pub fn is_bounded(&self) -> Result<bool> {
        Ok(recession_function(&self.g)? == recession_function(&self.h)?)
    }

    /// Full-dimensional cells of the common refinement with the affine piece of `φ` on each.
    pub fn cells(&self) -> Result<Vec<(AffineForm, Polyhedron)>> {
        let n = self.n();
        let gp = self.g.pieces();
        let hp = self.h.pieces();
        let mut out = Vec::new();
        for p in gp {
            for q in hp {
                let mut rows: Vec<Halfspace> = Vec::new();
                for p2 in gp.iter().filter(|p2| *p2 != p) {
                    rows.push(Halfspace::new(sub(&p2.y, &p.y), &p.c - &p2.c));
                }
                for q2 in hp.iter().filter(|q2| *q2 != q) {
                    rows.push(Halfspace::new(sub(&q2.y, &q.y), &q.c - &q2.c));
                }
                let cell = Polyhedron::from_constraints(n, &rows, &[])?;
                if cell.is_full_dim() {
                    out.push((AffineForm::new(sub(&p.y, &q.y), &p.c - &q.c), cell));
                }
            }
        }
        Ok(out)
    }

    /// `g − h` as a convex PL function when it is convex.
    ///
    /// A continuous PL function is convex iff each local affine piece is a
    /// global minorant, checked cell against cell.
    pub fn as_convex(&self) -> Result<Option<PolyConvexFunction>> {
        let cells = self.cells()?;
        for (l, _) in &cells {
            for (l2, c2) in &cells {
                if l == l2 {
                    continue;
                }
                let dy: Point = sub(&l.y, &l2.y);
                let dc = &l.c - &l2.c;
                let above_at = |x: &Point| (dot(&dy, x) + &dc).is_positive();
                if c2.vertices().iter().any(above_at)
                    || c2.rays().iter().any(|r| dot(&dy, r).is_positive())
                    || c2.lines().iter().any(|r| !dot(&dy, r).is_zero())
                {
                    return Ok(None);
                }
            }
        }
        let mut pieces: Vec<AffineForm> = cells.into_iter().map(|(l, _)| l).collect();
        pieces.sort();
        pieces.dedup();
        Ok(Some(PolyConvexFunction::new(self.n(), &pieces, None)?))
    }
}
