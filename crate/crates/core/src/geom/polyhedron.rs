//! Polyhedra in V- and H-representation.
//!
//! A [`Polyhedron`] is always kept canonical: vertices are the vertices of
//! `P ∩ C` where `C` is the coordinate complement of the lineality space
//! (pivot columns of the lineality basis set to zero), rays are primitive
//! integer extreme rays of the same section, and lines form the reduced row
//! echelon basis of the lineality space. Two canonical polyhedra are equal as
//! sets iff their representations are equal.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::dd::cone_generators;
use super::linalg::{rank, Rref};
use crate::error::{check_dim, Error, Result};
use crate::scalar::{add, dot, int, is_zero_vec, primitive, scale, sub, Point, Scalar};

static DIMENSION_LIMIT: AtomicUsize = AtomicUsize::new(4);

/// Default cap on the ambient dimension of polyhedra handed to double description.
pub const DEFAULT_DIMENSION_LIMIT: usize = 4;

pub fn dimension_limit() -> usize {
    DIMENSION_LIMIT.load(AtomicOrdering::Relaxed)
}

/// Overrides the ambient dimension cap (process wide).
pub fn set_dimension_limit(limit: usize) {
    DIMENSION_LIMIT.store(limit, AtomicOrdering::Relaxed);
}

fn check_limit(dim: usize) -> Result<()> {
    let limit = dimension_limit();
    if dim > limit {
        Err(Error::DimensionLimit { dim, limit })
    } else {
        Ok(())
    }
}

/// One row `⟨a, x⟩ ≤ b` (or `= b` inside the equality block of an [`HRep`]).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub a: Point,
    pub b: Scalar,
}

impl Halfspace {
    pub fn new(a: Point, b: Scalar) -> Self {
        Halfspace { a, b }
    }

    pub fn value(&self, x: &[Scalar]) -> Scalar {
        dot(&self.a, x) - &self.b
    }
}

/// Rows `⟨aᵢ, x⟩ ≤ bᵢ`; the public, inequality-only H-representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    pub dim: usize,
    pub rows: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn new(dim: usize, rows: Vec<Halfspace>) -> Result<Self> {
        for r in &rows {
            check_dim(dim, r.a.len())?;
        }
        Ok(HalfspaceSystem { dim, rows })
    }

    /// The whole space: no rows.
    pub fn everything(dim: usize) -> Self {
        HalfspaceSystem { dim, rows: Vec::new() }
    }
}

/// Canonical irredundant H-representation: affine hull equalities in reduced
/// echelon form plus one normalized row per facet.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HRep {
    pub eqs: Vec<Halfspace>,
    pub ineqs: Vec<Halfspace>,
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    dim: usize,
    vertices: Vec<Point>,
    rays: Vec<Point>,
    lines: Vec<Point>,
    hrep: HRep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyhedron(Arc<Inner>);

impl Polyhedron {
    pub fn empty(dim: usize) -> Polyhedron {
        let mut a = vec![Scalar::zero(); dim];
        a.truncate(dim);
        Polyhedron(Arc::new(Inner {
            dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lines: Vec::new(),
            hrep: HRep {
                eqs: Vec::new(),
                ineqs: vec![Halfspace::new(a, -Scalar::one())],
            },
        }))
    }

    /// All of `ℝ^dim`.
    pub fn whole(dim: usize) -> Polyhedron {
        let lines = (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Polyhedron(Arc::new(Inner {
            dim,
            vertices: vec![vec![Scalar::zero(); dim]],
            rays: Vec::new(),
            lines,
            hrep: HRep::default(),
        }))
    }

    /// Axis parallel box `∏ [loᵢ, hiᵢ]`.
    pub fn cuboid(lo: &[Scalar], hi: &[Scalar]) -> Result<Polyhedron> {
        check_dim(lo.len(), hi.len())?;
        let dim = lo.len();
        let mut rows = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = vec![Scalar::zero(); dim];
            e[i] = Scalar::one();
            rows.push(Halfspace::new(e.clone(), hi[i].clone()));
            rows.push(Halfspace::new(e.iter().map(|x| -x).collect(), -lo[i].clone()));
        }
        Polyhedron::from_constraints(dim, &rows, &[])
    }

    /// The cube `[-r, r]^dim`.
    pub fn cube(dim: usize, r: &Scalar) -> Result<Polyhedron> {
        let lo = vec![-r.clone(); dim];
        let hi = vec![r.clone(); dim];
        Polyhedron::cuboid(&lo, &hi)
    }

    /// `conv(points) + cone(rays)`; opposite ray pairs become lineality.
    pub fn from_generators(dim: usize, points: &[Point], rays: &[Point]) -> Result<Polyhedron> {
        Polyhedron::from_generators_with_lines(dim, points, rays, &[])
    }

    pub fn from_generators_with_lines(
        dim: usize,
        points: &[Point],
        rays: &[Point],
        lines: &[Point],
    ) -> Result<Polyhedron> {
        for v in points.iter().chain(rays).chain(lines) {
            check_dim(dim, v.len())?;
        }
        check_limit(dim)?;
        if points.is_empty() {
            return Ok(Polyhedron::empty(dim));
        }
        let rays: Vec<Point> = rays.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
        let lines: Vec<Point> = lines.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
        // valid inequalities (a, β) with a·x ≤ β form the cone below
        let mut ineqs: Vec<Point> = Vec::with_capacity(points.len() + rays.len());
        for v in points {
            let mut row = v.clone();
            row.push(-Scalar::one());
            ineqs.push(row);
        }
        for r in &rays {
            let mut row = r.clone();
            row.push(Scalar::zero());
            ineqs.push(row);
        }
        let eqs: Vec<Point> = lines
            .iter()
            .map(|l| {
                let mut row = l.clone();
                row.push(Scalar::zero());
                row
            })
            .collect();
        let gens = cone_generators(dim + 1, &ineqs, &eqs);
        let split = |v: &Point| Halfspace::new(v[..dim].to_vec(), v[dim].clone());
        let h_eqs: Vec<Halfspace> = gens.lines.iter().map(split).filter(|h| !is_zero_vec(&h.a)).collect();
        let h_ineqs: Vec<Halfspace> = gens.rays.iter().map(split).filter(|h| !is_zero_vec(&h.a)).collect();
        Ok(canonicalize(dim, points, &rays, &lines, &h_ineqs, &h_eqs))
    }

    pub fn from_halfspaces(h: &HalfspaceSystem) -> Result<Polyhedron> {
        Polyhedron::from_constraints(h.dim, &h.rows, &[])
    }

    /// `{x : ⟨a, x⟩ ≤ b for ineqs, ⟨e, x⟩ = f for eqs}`.
    pub fn from_constraints(dim: usize, ineqs: &[Halfspace], eqs: &[Halfspace]) -> Result<Polyhedron> {
        for h in ineqs.iter().chain(eqs) {
            check_dim(dim, h.a.len())?;
        }
        check_limit(dim)?;
        let mut ineq_rows: Vec<Halfspace> = Vec::with_capacity(ineqs.len());
        for h in ineqs {
            if is_zero_vec(&h.a) {
                if h.b.is_negative() {
                    return Ok(Polyhedron::empty(dim));
                }
                continue;
            }
            ineq_rows.push(h.clone());
        }
        let mut eq_rows: Vec<Halfspace> = Vec::with_capacity(eqs.len());
        for h in eqs {
            if is_zero_vec(&h.a) {
                if !h.b.is_zero() {
                    return Ok(Polyhedron::empty(dim));
                }
                continue;
            }
            eq_rows.push(h.clone());
        }
        ineq_rows.sort();
        ineq_rows.dedup();
        let hom = |h: &Halfspace| {
            let mut row = h.a.clone();
            row.push(-h.b.clone());
            row
        };
        let mut cone_ineqs: Vec<Point> = ineq_rows.iter().map(hom).collect();
        let mut slack = vec![Scalar::zero(); dim + 1];
        slack[dim] = -Scalar::one();
        cone_ineqs.push(slack);
        let cone_eqs: Vec<Point> = eq_rows.iter().map(hom).collect();
        let gens = cone_generators(dim + 1, &cone_ineqs, &cone_eqs);
        let mut points = Vec::new();
        let mut rays = Vec::new();
        for r in &gens.rays {
            let s = &r[dim];
            if s.is_positive() {
                points.push(r[..dim].iter().map(|x| x / s).collect::<Point>());
            } else {
                rays.push(r[..dim].to_vec());
            }
        }
        if points.is_empty() {
            return Ok(Polyhedron::empty(dim));
        }
        let lines: Vec<Point> = gens.lines.iter().map(|l| l[..dim].to_vec()).collect();
        Ok(canonicalize(dim, &points, &rays, &lines, &ineq_rows, &eq_rows))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.0.vertices
    }

    /// Extreme rays of the pointed section (lineality excluded).
    pub fn rays(&self) -> &[Point] {
        &self.0.rays
    }

    /// Basis of the lineality space.
    pub fn lines(&self) -> &[Point] {
        &self.0.lines
    }

    /// Rays with every line listed as an opposite pair; the external form.
    pub fn rays_with_lines(&self) -> Vec<Point> {
        let mut out = self.0.rays.clone();
        for l in &self.0.lines {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn hrep(&self) -> &HRep {
        &self.0.hrep
    }

    pub fn is_empty(&self) -> bool {
        self.0.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.0.rays.is_empty() && self.0.lines.is_empty()
    }

    pub fn is_whole_space(&self) -> bool {
        self.0.lines.len() == self.0.dim
    }

    /// Affine dimension; `None` for the empty set.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.0.dim - self.0.hrep.eqs.len())
        }
    }

    pub fn is_full_dim(&self) -> bool {
        !self.is_empty() && self.0.hrep.eqs.is_empty()
    }

    /// Irredundant inequality form; equalities appear as opposite row pairs.
    pub fn to_halfspaces(&self) -> Result<HalfspaceSystem> {
        check_limit(self.dim())?;
        let h = &self.0.hrep;
        let mut rows = Vec::with_capacity(h.ineqs.len() + 2 * h.eqs.len());
        for e in &h.eqs {
            rows.push(e.clone());
            rows.push(Halfspace::new(e.a.iter().map(|x| -x).collect(), -e.b.clone()));
        }
        rows.extend(h.ineqs.iter().cloned());
        Ok(HalfspaceSystem { dim: self.dim(), rows })
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        if self.is_empty() || x.len() != self.dim() {
            return false;
        }
        let h = &self.0.hrep;
        h.eqs.iter().all(|e| e.value(x).is_zero()) && h.ineqs.iter().all(|r| !r.value(x).is_positive())
    }

    /// `x` lies in the topological interior (requires full dimension).
    pub fn contains_in_interior(&self, x: &[Scalar]) -> bool {
        self.is_full_dim() && x.len() == self.dim() && self.0.hrep.ineqs.iter().all(|r| r.value(x).is_negative())
    }

    /// Direction `r` lies in the recession cone.
    pub fn recedes(&self, r: &[Scalar]) -> bool {
        let h = &self.0.hrep;
        h.eqs.iter().all(|e| dot(&e.a, r).is_zero()) && h.ineqs.iter().all(|q| !dot(&q.a, r).is_positive())
    }

    /// `other ⊆ self`.
    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() || self.dim() != other.dim() {
            return false;
        }
        other.vertices().iter().all(|v| self.contains(v))
            && other.rays().iter().all(|r| self.recedes(r))
            && other.lines().iter().all(|l| self.recedes(l) && self.recedes(&crate::scalar::neg(l)))
    }

    /// Bounded `other` lies in the interior of `self`.
    pub fn contains_in_interior_polytope(&self, other: &Polyhedron) -> bool {
        other.is_bounded() && other.vertices().iter().all(|v| self.contains_in_interior(v))
    }

    pub fn intersect(&self, h: &HalfspaceSystem) -> Result<Polyhedron> {
        check_dim(self.dim(), h.dim)?;
        if h.rows.is_empty() {
            return Ok(self.clone());
        }
        let mut ineqs = self.0.hrep.ineqs.clone();
        ineqs.extend(h.rows.iter().cloned());
        Polyhedron::from_constraints(self.dim(), &ineqs, &self.0.hrep.eqs)
    }

    pub fn intersect_polyhedron(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        let mut ineqs = self.0.hrep.ineqs.clone();
        ineqs.extend(other.0.hrep.ineqs.iter().cloned());
        let mut eqs = self.0.hrep.eqs.clone();
        eqs.extend(other.0.hrep.eqs.iter().cloned());
        Polyhedron::from_constraints(self.dim(), &ineqs, &eqs)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim(), other.dim())?;
        if self.is_empty() || other.is_empty() {
            return Ok(Polyhedron::empty(self.dim()));
        }
        let mut points = Vec::with_capacity(self.vertices().len() * other.vertices().len());
        for v in self.vertices() {
            for w in other.vertices() {
                points.push(add(v, w));
            }
        }
        let mut rays = self.rays().to_vec();
        rays.extend(other.rays().iter().cloned());
        let mut lines = self.lines().to_vec();
        lines.extend(other.lines().iter().cloned());
        Polyhedron::from_generators_with_lines(self.dim(), &points, &rays, &lines)
    }

    pub fn translate(&self, t: &[Scalar]) -> Result<Polyhedron> {
        check_dim(self.dim(), t.len())?;
        if self.is_empty() {
            return Ok(self.clone());
        }
        let points: Vec<Point> = self.vertices().iter().map(|v| add(v, t)).collect();
        Polyhedron::from_generators_with_lines(self.dim(), &points, self.rays(), self.lines())
    }

    /// Dilation `t·P` for `t > 0`.
    pub fn dilate(&self, t: &Scalar) -> Result<Polyhedron> {
        if !t.is_positive() {
            return Err(Error::InvalidArgument("dilation factor must be positive".into()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let points: Vec<Point> = self.vertices().iter().map(|v| scale(v, t)).collect();
        Polyhedron::from_generators_with_lines(self.dim(), &points, self.rays(), self.lines())
    }

    /// The recession cone `rec(P)`, as a polyhedron with the origin as apex.
    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        Polyhedron::from_generators_with_lines(self.dim(), &[vec![Scalar::zero(); self.dim()]], self.rays(), self.lines())
    }

    /// Image under dropping the last coordinate.
    pub fn project_out_last(&self) -> Result<Polyhedron> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::InvalidArgument("cannot project a 0-dimensional polyhedron".into()));
        }
        if self.is_empty() {
            return Ok(Polyhedron::empty(d - 1));
        }
        let cut = |v: &Point| v[..d - 1].to_vec();
        let points: Vec<Point> = self.vertices().iter().map(cut).collect();
        let rays: Vec<Point> = self.rays().iter().map(cut).collect();
        let lines: Vec<Point> = self.lines().iter().map(cut).collect();
        Polyhedron::from_generators_with_lines(d - 1, &points, &rays, &lines)
    }

    /// `P × ℝ` when `upward` is false, `P × [0, ∞)`-style cylinders are built by callers.
    pub fn cylinder(&self) -> Result<Polyhedron> {
        let d = self.dim();
        if self.is_empty() {
            return Ok(Polyhedron::empty(d + 1));
        }
        let ext = |v: &Point| {
            let mut w = v.clone();
            w.push(Scalar::zero());
            w
        };
        let points: Vec<Point> = self.vertices().iter().map(ext).collect();
        let rays: Vec<Point> = self.rays().iter().map(ext).collect();
        let mut lines: Vec<Point> = self.lines().iter().map(ext).collect();
        let mut up = vec![Scalar::zero(); d + 1];
        up[d] = Scalar::one();
        lines.push(up);
        Polyhedron::from_generators_with_lines(d + 1, &points, &rays, &lines)
    }

    /// Vertex indices lying on the facet `row` (an inequality of the canonical H-rep).
    pub fn tight_vertices(&self, row: &Halfspace) -> Vec<usize> {
        self.vertices()
            .iter()
            .enumerate()
            .filter(|(_, v)| row.value(v).is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Minimal vertex set of `conv(points)`; canonical and order independent.
pub fn convex_hull(points: &[Point]) -> Result<Polyhedron> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    Polyhedron::from_generators(first.len(), points, &[])
}

fn cmp_points(a: &Point, b: &Point) -> Ordering {
    a.cmp(b)
}

/// Shared canonicalization from a matching raw V/H pair of a nonempty polyhedron.
fn canonicalize(
    dim: usize,
    points: &[Point],
    rays: &[Point],
    lines: &[Point],
    ineqs: &[Halfspace],
    eqs: &[Halfspace],
) -> Polyhedron {
    // lineality = common kernel of every constraint normal
    let normals: Vec<Point> = ineqs.iter().chain(eqs).map(|h| h.a.clone()).collect();
    let kernel = super::linalg::nullspace(&normals, dim);
    let lin = Rref::new(&kernel, dim);
    let lin_dim = lin.rank();
    let _ = lines;

    let mut vertices: Vec<Point> = Vec::new();
    for p in points {
        let v = lin.reduce(p);
        let mut tight: Vec<Point> = eqs.iter().map(|e| e.a.clone()).collect();
        tight.extend(ineqs.iter().filter(|h| h.value(&v).is_zero()).map(|h| h.a.clone()));
        if rank(&tight, dim) == dim - lin_dim {
            vertices.push(v);
        }
    }
    vertices.sort_by(cmp_points);
    vertices.dedup();

    let mut ext_rays: Vec<Point> = Vec::new();
    for r in rays {
        let v = lin.reduce(r);
        if is_zero_vec(&v) {
            continue;
        }
        let mut tight: Vec<Point> = eqs.iter().map(|e| e.a.clone()).collect();
        tight.extend(ineqs.iter().filter(|h| dot(&h.a, &v).is_zero()).map(|h| h.a.clone()));
        if dim >= lin_dim + 1 && rank(&tight, dim) == dim - lin_dim - 1 {
            ext_rays.push(primitive(&v));
        }
    }
    ext_rays.sort_by(cmp_points);
    ext_rays.dedup();

    let line_basis = lin.rows.clone();

    // affine hull
    let v0 = &vertices[0];
    let mut dirs: Vec<Point> = vertices[1..].iter().map(|v| sub(v, v0)).collect();
    dirs.extend(ext_rays.iter().cloned());
    dirs.extend(line_basis.iter().cloned());
    let eq_normals = Rref::new(&super::linalg::nullspace(&dirs, dim), dim);
    let aff_dim = dim - eq_normals.rank();
    let canon_eqs: Vec<Halfspace> = eq_normals
        .rows
        .iter()
        .map(|e| Halfspace::new(e.clone(), dot(e, v0)))
        .collect();

    let reduce_row = |h: &Halfspace| -> Halfspace {
        let mut a = h.a.clone();
        let mut b = h.b.clone();
        for (e, &p) in canon_eqs.iter().zip(&eq_normals.pivots) {
            if !a[p].is_zero() {
                let f = a[p].clone();
                for (x, y) in a.iter_mut().zip(&e.a) {
                    *x -= &f * y;
                }
                b -= &f * &e.b;
            }
        }
        let mut ab = a;
        ab.push(b);
        let ab = primitive(&ab);
        Halfspace::new(ab[..dim].to_vec(), ab[dim].clone())
    };

    let mut facets: Vec<(Vec<usize>, Vec<usize>, Halfspace)> = Vec::new();
    for h in ineqs {
        let tv: Vec<usize> = (0..vertices.len()).filter(|&i| h.value(&vertices[i]).is_zero()).collect();
        let tr: Vec<usize> = (0..ext_rays.len()).filter(|&i| dot(&h.a, &ext_rays[i]).is_zero()).collect();
        if tv.len() == vertices.len() && tr.len() == ext_rays.len() {
            continue; // implicit equality
        }
        if tv.is_empty() {
            continue;
        }
        let w0 = &vertices[tv[0]];
        let mut fdirs: Vec<Point> = tv[1..].iter().map(|&i| sub(&vertices[i], w0)).collect();
        fdirs.extend(tr.iter().map(|&i| ext_rays[i].clone()));
        fdirs.extend(line_basis.iter().cloned());
        if rank(&fdirs, dim) + 1 != aff_dim {
            continue;
        }
        if facets.iter().any(|(v, r, _)| *v == tv && *r == tr) {
            continue;
        }
        facets.push((tv, tr, reduce_row(h)));
    }
    let mut canon_ineqs: Vec<Halfspace> = facets.into_iter().map(|(_, _, h)| h).collect();
    canon_ineqs.sort();
    canon_ineqs.dedup();

    Polyhedron(Arc::new(Inner {
        dim,
        vertices,
        rays: ext_rays,
        lines: line_basis,
        hrep: HRep {
            eqs: canon_eqs,
            ineqs: canon_ineqs,
        },
    }))
}

/// Unit direction `e_i` in `ℝ^dim`.
pub fn unit(dim: usize, i: usize) -> Point {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = int(1);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, point};

    fn square() -> Polyhedron {
        Polyhedron::cube(2, &int(1)).unwrap()
    }

    #[test]
    fn hull_drops_interior_points() {
        let p = convex_hull(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), vec![frac(1, 4), frac(1, 4)]]).unwrap();
        assert_eq!(p.vertices(), &[point(&[0, 0]), point(&[0, 1]), point(&[1, 0])]);
    }

    #[test]
    fn singleton_hull() {
        let p = convex_hull(&[point(&[0])]).unwrap();
        assert_eq!(p.vertices(), &[point(&[0])]);
        assert_eq!(p.affine_dim(), Some(0));
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(Error::EmptyInput));
        assert!(matches!(
            convex_hull(&[point(&[0, 0]), point(&[1])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn square_halfspaces() {
        let h = square().to_halfspaces().unwrap();
        let mut rows: Vec<(Point, Scalar)> = h.rows.into_iter().map(|r| (r.a, r.b)).collect();
        rows.sort();
        assert_eq!(
            rows,
            vec![
                (point(&[-1, 0]), int(1)),
                (point(&[0, -1]), int(1)),
                (point(&[0, 1]), int(1)),
                (point(&[1, 0]), int(1)),
            ]
        );
    }

    #[test]
    fn epigraph_of_abs() {
        let epi = Polyhedron::from_generators(2, &[point(&[0, 0])], &[point(&[1, 1]), point(&[-1, 1])]).unwrap();
        let mut rows: Vec<(Point, Scalar)> =
            epi.to_halfspaces().unwrap().rows.into_iter().map(|r| (r.a, r.b)).collect();
        rows.sort();
        // t >= x and t >= -x
        assert_eq!(rows, vec![(point(&[-1, -1]), int(0)), (point(&[1, -1]), int(0))]);
    }

    #[test]
    fn lineality_is_detected() {
        let halfplane = Polyhedron::from_generators(2, &[point(&[3, 0])], &[point(&[1, 0]), point(&[-1, 0]), point(&[0, 1])])
            .unwrap();
        assert_eq!(halfplane.lines(), &[point(&[1, 0])]);
        assert_eq!(halfplane.vertices(), &[point(&[0, 0])]);
        assert_eq!(halfplane.rays(), &[point(&[0, 1])]);
        let same = Polyhedron::from_constraints(2, &[Halfspace::new(point(&[0, -1]), int(0))], &[]).unwrap();
        assert_eq!(halfplane, same);
    }

    #[test]
    fn intersections() {
        let strip = Polyhedron::from_generators(2, &[point(&[-1, 0]), point(&[1, 0])], &[point(&[0, 1])]).unwrap();
        let cut = strip
            .intersect(&HalfspaceSystem::new(2, vec![Halfspace::new(point(&[0, 1]), frac(15, 2))]).unwrap())
            .unwrap();
        let expected = Polyhedron::cuboid(&[int(-1), int(0)], &[int(1), frac(15, 2)]).unwrap();
        assert_eq!(cut, expected);
        assert_eq!(strip.intersect(&HalfspaceSystem::everything(2)).unwrap(), strip);
        let seg = Polyhedron::cuboid(&[int(0)], &[int(1)]).unwrap();
        let none = seg
            .intersect(&HalfspaceSystem::new(1, vec![Halfspace::new(point(&[1]), int(-1))]).unwrap())
            .unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn minkowski_examples() {
        let seg = Polyhedron::cuboid(&[int(0)], &[int(1)]).unwrap();
        assert_eq!(seg.minkowski_sum(&seg).unwrap(), Polyhedron::cuboid(&[int(0)], &[int(2)]).unwrap());
        let tri = convex_hull(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1])]).unwrap();
        let p = convex_hull(&[point(&[2, 3])]).unwrap();
        assert_eq!(tri.minkowski_sum(&p).unwrap(), tri.translate(&point(&[2, 3])).unwrap());
    }

    #[test]
    fn degenerate_segment_in_plane() {
        let seg = convex_hull(&[point(&[0, 0]), point(&[2, 2])]).unwrap();
        assert_eq!(seg.affine_dim(), Some(1));
        assert_eq!(seg.hrep().eqs.len(), 1);
        assert!(seg.contains(&point(&[1, 1])));
        assert!(!seg.contains(&point(&[1, 0])));
    }

    #[test]
    fn dimension_guard() {
        let p = vec![vec![int(0); 5]];
        assert!(matches!(convex_hull(&p), Err(Error::DimensionLimit { dim: 5, limit: 4 })));
    }
}
