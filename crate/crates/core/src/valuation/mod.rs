//! Valuations on cones of PL convex functions.
//!
//! A [`Valuation`] pairs an evaluatable kernel with its metadata: ambient
//! dimension `n`, degree bound `d` with respect to adding affine functions,
//! output dimension `m`, the cone it lives on and an optional homogeneity.

mod decompose;
mod fit;
mod polar;
mod support;
mod verify;

pub use decompose::{decompose_homogeneous, default_nodes, DecompositionResult};
pub use fit::{affine_poly_fit, epi_translation_fit, AffinePolynomial};
pub use polar::{gw_evaluate, polarize};
pub use support::{support_estimate, Probe, SupportReport};
pub use verify::{cut_body_pair, verify_valuation_identity, VerifyReport, Violation};

use num::{Signed, Zero};

use crate::convex::{conjugate, replace_by_body, support_lift, ConeSpec, DualConeSpec, Membership, PolyConvexFunction};
use crate::error::{check_dim, Error, Result};
use crate::geom::integrate::volume;
use crate::geom::Polyhedron;
use crate::hessian::{integrate_atoms, theta0_unchecked, PiecewisePolyDensity};
use crate::scalar::{dot, Point, Scalar};

/// Cone a valuation is defined on: an `(𝒜, 𝒪)`-cone or its image under conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValCone {
    Primal(ConeSpec),
    Dual { primal: ConeSpec, dual: DualConeSpec },
}

impl ValCone {
    pub fn primal(c: ConeSpec) -> Self {
        ValCone::Primal(c)
    }

    pub fn n(&self) -> usize {
        match self {
            ValCone::Primal(c) => c.n(),
            ValCone::Dual { primal, .. } => primal.n(),
        }
    }

    pub fn membership(&self, f: &PolyConvexFunction) -> Membership {
        match self {
            ValCone::Primal(c) => c.membership(f),
            ValCone::Dual { dual, .. } => dual.membership(f),
        }
    }

    /// The cone of conjugates.
    pub fn dual(&self) -> Result<ValCone> {
        Ok(match self {
            ValCone::Primal(c) => ValCone::Dual { primal: c.clone(), dual: c.dual()? },
            ValCone::Dual { primal, .. } => ValCone::Primal(primal.clone()),
        })
    }

    /// The basepoint: `I_𝒜` on a primal cone, `h_𝒜` on a dual one.
    pub fn basepoint(&self) -> Result<PolyConvexFunction> {
        match self {
            ValCone::Primal(c) => c.indicator_a(),
            ValCone::Dual { dual, .. } => dual.support_a(),
        }
    }

    /// The second distinguished member: `I_𝒪` or `h_𝒪`.
    pub fn small_member(&self) -> Result<PolyConvexFunction> {
        match self {
            ValCone::Primal(c) => c.indicator_o(),
            ValCone::Dual { dual, .. } => PolyConvexFunction::from_epigraph(dual.epi_h_o()),
        }
    }

    pub fn is_dual(&self) -> bool {
        matches!(self, ValCone::Dual { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    /// `∫ φ(x)[y, f(x)] dΘ₀(f; (x, y))`.
    TopDegree { phi: PiecewisePolyDensity },
    /// `∫_B |∇f|²`.
    Dirichlet { b: Polyhedron },
    /// `f ↦ Z(f*)`.
    Dualized { inner: Box<Valuation> },
    /// `f ↦ Z(h_K(·,−1))` with `K` the truncated epigraph body of `f` over `A`.
    Extended { inner: Box<Valuation>, a: Polyhedron, eps: Scalar },
    /// The `k`-homogeneous component of `inner`.
    Component { inner: Box<Valuation>, k: usize, nodes: Vec<Scalar> },
    /// Not a valuation: `max` of `f` over finitely many points. A negative control.
    BrokenMax { points: Vec<Point> },
    Zero,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::TopDegree { .. } => "top_degree",
            Kind::Dirichlet { .. } => "dirichlet",
            Kind::Dualized { .. } => "dualized",
            Kind::Extended { .. } => "extended",
            Kind::Component { .. } => "component",
            Kind::BrokenMax { .. } => "broken_max",
            Kind::Zero => "zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub cone: ValCone,
    pub homogeneity: Option<usize>,
    pub kind: Kind,
}

impl Valuation {
    pub fn evaluate(&self, f: &PolyConvexFunction) -> Result<Vec<Scalar>> {
        check_dim(self.n, f.n())?;
        if let Kind::Extended { a, .. } = &self.kind {
            if !f.domain().contains_in_interior_polytope(a) {
                return Err(Error::OutsideMaximalCone("A is not inside the interior of dom f".into()));
            }
        }
        self.cone.membership(f).into_result()?;
        self.evaluate_unchecked(f)
    }

    fn evaluate_unchecked(&self, f: &PolyConvexFunction) -> Result<Vec<Scalar>> {
        match &self.kind {
            Kind::TopDegree { phi } => {
                let atoms = theta0_unchecked(f, &phi.hull()?)?;
                integrate_atoms(&atoms, phi)
            }
            Kind::Dirichlet { b } => {
                let mut total = Scalar::zero();
                for (piece, cell) in f.cells()? {
                    let w = dot(&piece.y, &piece.y);
                    if w.is_zero() {
                        continue;
                    }
                    total += w * volume(&cell.intersect_polyhedron(b)?)?;
                }
                Ok(vec![total])
            }
            Kind::Dualized { inner } => inner.evaluate(&conjugate(f)?),
            Kind::Extended { inner, a, eps } => {
                let mut e = eps.clone();
                let two = Scalar::from_integer(2.into());
                loop {
                    match replace_by_body(f, a, &e) {
                        Ok(k) => return inner.evaluate(&support_lift(&k)?),
                        Err(Error::NotInteriorToDomain) if e.is_positive() => e /= &two,
                        Err(err) => return Err(err),
                    }
                    if e < Scalar::new(1.into(), (1u64 << 40).into()) {
                        return Err(Error::OutsideMaximalCone("A touches the boundary of dom f".into()));
                    }
                }
            }
            Kind::Component { inner, k, nodes } => {
                let r = decompose_homogeneous(inner, f, Some(nodes))?;
                Ok(r.components.get(*k).cloned().unwrap_or_else(|| vec![Scalar::zero(); self.m]))
            }
            Kind::BrokenMax { points } => {
                let vals = points.iter().map(|p| f.eval_finite(p)).collect::<Result<Vec<_>>>()?;
                Ok(vec![vals.into_iter().max().ok_or(Error::EmptyInput)?])
            }
            Kind::Zero => Ok(vec![Scalar::zero(); self.m]),
        }
    }

    /// Homogeneous components `Z_k` for `k = 1..=n+d`, each as its own valuation.
    pub fn components(&self) -> Vec<Valuation> {
        (1..=self.n + self.d).map(|k| self.component(k)).collect()
    }

    /// `Z_k` as a valuation.
    pub fn component(&self, k: usize) -> Valuation {
        Valuation {
            n: self.n,
            d: self.d,
            m: self.m,
            cone: self.cone.clone(),
            homogeneity: Some(k),
            kind: Kind::Component {
                inner: Box::new(self.clone()),
                k,
                nodes: default_nodes(self.n + self.d + 2),
            },
        }
    }
}

/// `f ↦ ∫ φ(x)[y, f(x)] dΘ₀(f; (x, y))`; `supp φ` must lie in `int 𝒪`.
pub fn make_top_degree(phi: PiecewisePolyDensity, cone: ConeSpec) -> Result<Valuation> {
    check_dim(cone.n(), phi.n())?;
    for c in phi.cells() {
        if !cone.o().contains_in_interior_polytope(&c.cell) {
            return Err(Error::SupportEscapes("density cell is not inside int O".into()));
        }
    }
    let n = phi.n();
    let d = phi.degree() as usize;
    let homogeneity = phi.is_homogeneous().then_some(n + d);
    Ok(Valuation { n, d, m: phi.m(), cone: ValCone::Primal(cone), homogeneity, kind: Kind::TopDegree { phi } })
}

/// `f ↦ ∫_B |∇f|² dx`; `B` must lie in `int 𝒪`.
pub fn make_dirichlet(b: Polyhedron, cone: ConeSpec) -> Result<Valuation> {
    check_dim(cone.n(), b.dim())?;
    if !b.is_bounded() {
        return Err(Error::NotPolytope);
    }
    if !cone.o().contains_in_interior_polytope(&b) {
        return Err(Error::SupportEscapes("B is not inside int O".into()));
    }
    Ok(Valuation { n: b.dim(), d: 2, m: 1, cone: ValCone::Primal(cone), homogeneity: Some(2), kind: Kind::Dirichlet { b } })
}

/// `Z̃(f) = Z(f*)` on the dual cone.
pub fn dualize_valuation(z: &Valuation) -> Result<Valuation> {
    if let Kind::Dualized { inner } = &z.kind {
        return Ok((**inner).clone());
    }
    Ok(Valuation {
        n: z.n,
        d: z.d,
        m: z.m,
        cone: z.cone.dual()?,
        homogeneity: None,
        kind: Kind::Dualized { inner: Box::new(z.clone()) },
    })
}

/// The extension `Z̃(f) = Z(h_K(·,−1))`, `K = replace_by_body(f, A, ε)`, on the target cone.
pub fn extend_valuation(z: &Valuation, a: &Polyhedron, target: ConeSpec, eps: &Scalar) -> Result<Valuation> {
    check_dim(z.n, a.dim())?;
    check_dim(z.n, target.n())?;
    if !eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if a.is_empty() || !a.is_bounded() {
        return Err(Error::NotPolytope);
    }
    let thick = crate::convex::body::thicken(a, eps)?;
    if !target.o().contains_in_interior_polytope(&thick) {
        return Err(Error::NotInteriorToDomain);
    }
    Ok(Valuation {
        n: z.n,
        d: z.d,
        m: z.m,
        cone: ValCone::Primal(target),
        homogeneity: z.homogeneity,
        kind: Kind::Extended { inner: Box::new(z.clone()), a: a.clone(), eps: eps.clone() },
    })
}

/// Negative control: `f ↦ max_i f(pᵢ)` on the full cone.
pub fn make_broken_max(points: Vec<Point>) -> Result<Valuation> {
    let n = points.first().ok_or(Error::EmptyInput)?.len();
    for p in &points {
        check_dim(n, p.len())?;
    }
    Ok(Valuation { n, d: 1, m: 1, cone: ValCone::Primal(ConeSpec::full(n)), homogeneity: Some(1), kind: Kind::BrokenMax { points } })
}

/// `Z ≡ 0` with values in `ℝ^m`.
pub fn make_zero(cone: ConeSpec, m: usize) -> Valuation {
    Valuation { n: cone.n(), d: 0, m, cone: ValCone::Primal(cone), homogeneity: None, kind: Kind::Zero }
}
