//! Bodies standing in for functions: epigraph truncation and bounded perturbations.

use num::{BigInt, One, Signed, Zero};

use super::conjugate::{conjugate, support_lift};
use super::dc::DcPair;
use super::function::PolyConvexFunction;
use crate::error::{check_dim, Error, Result};
use crate::geom::{Halfspace, HalfspaceSystem, Polyhedron};
use crate::scalar::{max_abs, Scalar};

/// Smallest `k/1000 ≥ √n`; exact for perfect squares.
pub fn sqrt_upper(n: usize) -> Scalar {
    let target = BigInt::from(n) * BigInt::from(1_000_000u32);
    let mut k = target.sqrt();
    if &k * &k < target {
        k += 1;
    }
    Scalar::new(k, BigInt::from(1000))
}

/// `A + eps·[−1,1]ⁿ`.
pub fn thicken(a: &Polyhedron, eps: &Scalar) -> Result<Polyhedron> {
    a.minkowski_sum(&Polyhedron::cube(a.dim(), eps)?)
}

/// Minimum of `f` over a polytope inside its domain.
pub fn min_over(f: &PolyConvexFunction, p: &Polyhedron) -> Result<Scalar> {
    let slab = f.epigraph().intersect_polyhedron(&p.cylinder()?)?;
    slab.vertices()
        .iter()
        .map(|v| v[f.n()].clone())
        .min()
        .ok_or(Error::OutsideDomain)
}

/// Maximum of `f` over a polytope inside its domain (attained at a vertex).
pub fn max_over(f: &PolyConvexFunction, p: &Polyhedron) -> Result<Scalar> {
    p.vertices()
        .iter()
        .map(|v| f.eval_finite(v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .ok_or(Error::EmptyInput)
}

/// A bounded body `K ⊂ ℝ^{n+1}` with `h_K(·,−1) ≤ f` everywhere and equality on `A`.
///
/// `K = epi(f*) ∩ {|y|∞ ≤ 2c√n/ε, |t| ≤ c(1 + 2·max_A|x|∞·√n/ε)}` where
/// `c = max |f|` over `A + ε·[−1,1]ⁿ`.
pub fn replace_by_body(f: &PolyConvexFunction, a: &Polyhedron, eps: &Scalar) -> Result<Polyhedron> {
    check_dim(f.n(), a.dim())?;
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !a.is_bounded() {
        return Err(Error::NotPolytope);
    }
    let n = f.n();
    let thick = thicken(a, eps)?;
    if !f.domain().contains_in_interior_polytope(&thick) {
        return Err(Error::NotInteriorToDomain);
    }
    let c = max_over(f, &thick)?.abs().max(min_over(f, &thick)?.abs());
    let root = sqrt_upper(n);
    let two = Scalar::from_integer(2.into());
    let y_bound = &two * &c * &root / eps;
    let x_max = a.vertices().iter().map(|v| max_abs(v)).max().unwrap_or_else(Scalar::zero);
    let t_bound = &c * (Scalar::one() + &two * x_max * &root / eps);
    let mut rows = Vec::with_capacity(2 * n + 2);
    for i in 0..=n {
        let bound = if i < n { &y_bound } else { &t_bound };
        let mut e = vec![Scalar::zero(); n + 1];
        e[i] = Scalar::one();
        rows.push(Halfspace::new(e.clone(), bound.clone()));
        rows.push(Halfspace::new(e.iter().map(|x| -x).collect(), bound.clone()));
    }
    let k = conjugate(f)?.epigraph().intersect(&HalfspaceSystem::new(n + 1, rows)?)?;
    if k.is_empty() {
        return Err(Error::Improper("truncated epigraph is empty".into()));
    }
    Ok(k)
}

/// Result of perturbing `h_K(·,−1)` by a bounded PL function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Perturbation {
    /// The sum is convex; `certificate` is a body whose lift is the sum.
    Convex { function: PolyConvexFunction, certificate: Polyhedron },
    NotConvex,
}

/// `h_K(·,−1) + φ` for a bounded `φ = g − h`, with the body
/// `K_φ = epi((h_K(·,−1)+φ)*) ∩ {t ≤ T}` when the sum is convex.
pub fn perturb_bounded(k: &Polyhedron, phi: &DcPair) -> Result<Perturbation> {
    let lift = support_lift(k)?;
    check_dim(lift.n(), phi.n())?;
    if !phi.is_bounded()? {
        return Err(Error::InvalidArgument("perturbation is unbounded".into()));
    }
    let sum = DcPair::new(lift.add(&phi.g)?, phi.h.clone())?;
    let Some(function) = sum.as_convex()? else {
        return Ok(Perturbation::NotConvex);
    };
    let dual = conjugate(&function)?;
    if !dual.domain().is_bounded() {
        return Err(Error::Improper("conjugate domain is unbounded".into()));
    }
    let epi = dual.epigraph();
    let top = epi.vertices().iter().map(|v| v[lift.n()].clone()).max().ok_or(Error::EmptyInput)?;
    let mut cap = vec![Scalar::zero(); lift.n() + 1];
    cap[lift.n()] = Scalar::one();
    let certificate = epi.intersect(&HalfspaceSystem::new(lift.n() + 1, vec![Halfspace::new(cap, top)])?)?;
    Ok(Perturbation::Convex { function, certificate })
}
