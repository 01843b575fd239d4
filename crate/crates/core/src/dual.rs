//! Epi-calculus: infimal convolution, epi-multiplication and epigraph distance.

use num::{Signed, Zero};

use crate::convex::{recession_function, PolyConvexFunction};
use crate::error::{check_dim, Error, Result};
use crate::geom::integrate::face_sets;
use crate::geom::linalg::{solve, Rref};
use crate::geom::Polyhedron;
use crate::scalar::{add, dot, sub, to_f64, Point, Scalar};

/// `f □ g`, whose epigraph is `epi f + epi g`.
pub fn inf_conv(f: &PolyConvexFunction, g: &PolyConvexFunction) -> Result<PolyConvexFunction> {
    check_dim(f.n(), g.n())?;
    PolyConvexFunction::from_epigraph(&f.epigraph().minkowski_sum(g.epigraph())?)
}

/// `λ⋆f = λ f(·/λ)` for `λ > 0`; the recession function for `λ = 0`.
pub fn epi_mult(f: &PolyConvexFunction, lambda: &Scalar) -> Result<PolyConvexFunction> {
    if lambda.is_negative() {
        return Err(Error::InvalidArgument("epi-multiplication needs lambda >= 0".into()));
    }
    if lambda.is_zero() {
        return recession_function(f);
    }
    PolyConvexFunction::from_epigraph(&f.epigraph().dilate(lambda)?)
}

/// Exact squared Euclidean distance from `v` to a nonempty polytope.
pub fn squared_distance(v: &[Scalar], p: &Polyhedron) -> Result<Scalar> {
    if !p.is_bounded() {
        return Err(Error::NotPolytope);
    }
    if p.is_empty() {
        return Err(Error::EmptyInput);
    }
    let verts = p.vertices();
    let mut best: Option<Scalar> = None;
    for face in face_sets(p) {
        let w0 = &verts[face[0]];
        let dirs: Vec<Point> = face[1..].iter().map(|&i| sub(&verts[i], w0)).collect();
        let basis = Rref::new(&dirs, p.dim()).rows;
        let diff = sub(v, w0);
        let proj = if basis.is_empty() {
            w0.clone()
        } else {
            let gram: Vec<Point> = basis.iter().map(|b| basis.iter().map(|c| dot(b, c)).collect()).collect();
            let rhs: Vec<Point> = basis.iter().map(|b| vec![dot(b, &diff)]).collect();
            let alpha = solve(&gram, &rhs).ok_or_else(|| Error::InvalidArgument("singular face basis".into()))?;
            let mut q = w0.clone();
            for (b, a) in basis.iter().zip(&alpha) {
                q = add(&q, &b.iter().map(|x| x * &a[0]).collect::<Point>());
            }
            q
        };
        if !p.contains(&proj) {
            continue;
        }
        let d = sub(v, &proj);
        let d2 = dot(&d, &d);
        if best.as_ref().is_none_or(|b| d2 < *b) {
            best = Some(d2);
        }
    }
    best.ok_or(Error::EmptyInput)
}

/// Hausdorff distance of two polytopes; the max of vertex-to-set distances.
pub fn hausdorff(p: &Polyhedron, q: &Polyhedron) -> Result<f64> {
    let mut worst = Scalar::zero();
    for (a, b) in [(p, q), (q, p)] {
        for v in a.vertices() {
            let d = squared_distance(v, b)?;
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(to_f64(&worst).sqrt())
}

/// Hausdorff distance between `epi f ∩ [−ρ,ρ]^{n+1}` and `epi g ∩ [−ρ,ρ]^{n+1}` (float).
pub fn epi_distance(f: &PolyConvexFunction, g: &PolyConvexFunction, rho: &Scalar) -> Result<f64> {
    check_dim(f.n(), g.n())?;
    if !rho.is_positive() {
        return Err(Error::InvalidArgument("rho must be positive".into()));
    }
    let cube = Polyhedron::cube(f.n() + 1, rho)?;
    let a = f.epigraph().intersect_polyhedron(&cube)?;
    let b = g.epigraph().intersect_polyhedron(&cube)?;
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Err(Error::InvalidArgument("both truncated epigraphs are empty; increase rho".into())),
        (false, false) => hausdorff(&a, &b),
        _ => Ok(f64::INFINITY),
    }
}
