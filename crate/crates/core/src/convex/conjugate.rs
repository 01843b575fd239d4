//! Conjugation and the body ↔ function dictionary.

use num::{One, Zero};

use super::function::{AffineForm, PolyConvexFunction};
use crate::error::{Error, Result};
use crate::geom::{Halfspace, Polyhedron};
use crate::scalar::{Point, Scalar};

/// `epi(h_D)` for a polyhedron `D ⊂ ℝⁿ`, a cone in `ℝ^{n+1}`.
pub fn support_epigraph(d: &Polyhedron) -> Result<Polyhedron> {
    let n = d.dim();
    let mut ineqs: Vec<Halfspace> = Vec::new();
    for v in d.vertices() {
        let mut a = v.clone();
        a.push(-Scalar::one());
        ineqs.push(Halfspace::new(a, Scalar::zero()));
    }
    for r in d.rays() {
        let mut a = r.clone();
        a.push(Scalar::zero());
        ineqs.push(Halfspace::new(a, Scalar::zero()));
    }
    let eqs: Vec<Halfspace> = d
        .lines()
        .iter()
        .map(|l| {
            let mut a = l.clone();
            a.push(Scalar::zero());
            Halfspace::new(a, Scalar::zero())
        })
        .collect();
    Polyhedron::from_constraints(n + 1, &ineqs, &eqs)
}

/// The support function `h_D` as a PL function (domain is the barrier cone of `D`).
pub fn support_function(d: &Polyhedron) -> Result<PolyConvexFunction> {
    if d.is_empty() {
        return Err(Error::Improper("support function of the empty set".into()));
    }
    PolyConvexFunction::from_epigraph(&support_epigraph(d)?)
}

/// Fenchel conjugate `f*(y) = sup_x ⟨x,y⟩ − f(x)`.
///
/// `epi f* = conv{(yᵢ, −cᵢ)} + cone{(0,1)} + epi(h_dom f)`.
pub fn conjugate(f: &PolyConvexFunction) -> Result<PolyConvexFunction> {
    let n = f.n();
    let points: Vec<Point> = f
        .pieces()
        .iter()
        .map(|p| {
            let mut v = p.y.clone();
            v.push(-p.c.clone());
            v
        })
        .collect();
    let h = support_epigraph(f.domain())?;
    let mut rays = h.rays().to_vec();
    let mut up = vec![Scalar::zero(); n + 1];
    up[n] = Scalar::one();
    rays.push(up);
    let epi = Polyhedron::from_generators_with_lines(n + 1, &points, &rays, h.lines())?;
    PolyConvexFunction::from_epigraph(&epi)
}

fn check_body(k: &Polyhedron) -> Result<()> {
    if k.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !k.is_bounded() {
        return Err(Error::NotPolytope);
    }
    if k.dim() == 0 {
        return Err(Error::InvalidArgument("body must live in dimension n+1 ≥ 1".into()));
    }
    Ok(())
}

/// `h_K(·, −1)`: pieces `⟨v, x⟩ − t` over vertices `(v, t)` of `K`, domain all.
pub fn support_lift(k: &Polyhedron) -> Result<PolyConvexFunction> {
    check_body(k)?;
    let n = k.dim() - 1;
    let pieces: Vec<AffineForm> = k
        .vertices()
        .iter()
        .map(|v| AffineForm::new(v[..n].to_vec(), -v[n].clone()))
        .collect();
    PolyConvexFunction::new(n, &pieces, None)
}

/// `⌊K⌋(x) = inf {t : (x,t) ∈ K}`, the lower envelope of `K`.
pub fn floor_body(k: &Polyhedron) -> Result<PolyConvexFunction> {
    check_body(k)?;
    let n = k.dim() - 1;
    let mut up = vec![Scalar::zero(); n + 1];
    up[n] = Scalar::one();
    let epi = Polyhedron::from_generators(n + 1, k.vertices(), &[up])?;
    PolyConvexFunction::from_epigraph(&epi)
}

/// `H_𝒜(K) = h_K(·, −1) + I_𝒜`.
pub fn lift_ha(k: &Polyhedron, a: &Polyhedron) -> Result<PolyConvexFunction> {
    let lift = support_lift(k)?;
    if a.is_whole_space() {
        return Ok(lift);
    }
    lift.add(&PolyConvexFunction::indicator_of(a)?)
}

/// `ρ_f`, whose epigraph is the recession cone of `epi f`.
pub fn recession_function(f: &PolyConvexFunction) -> Result<PolyConvexFunction> {
    PolyConvexFunction::from_epigraph(&f.epigraph().recession_cone()?)
}

/// Recovers `K ⊂ ℝ^{n+1}` with `f = h_K(·,−1)` when `f` has full domain and
/// `f*` has bounded domain: the vertices of `epi f*`.
pub fn body_of(f: &PolyConvexFunction) -> Result<Polyhedron> {
    let g = conjugate(f)?;
    if !g.domain().is_bounded() {
        return Err(Error::Improper("conjugate has unbounded domain".into()));
    }
    Polyhedron::from_generators(f.n() + 1, g.epigraph().vertices(), &[])
}
