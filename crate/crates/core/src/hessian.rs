//! Subdifferentials and the order-0 Hessian measure of PL convex functions.
//!
//! For a PL function, `Θ₀` is atomic in `x`: it sits on the 0-cells `x` of
//! the cell complex whose subdifferential is full dimensional, with Lebesgue
//! measure on `{x} × ∂f(x)`.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::convex::{AffineForm, PolyConvexFunction};
use crate::error::{check_dim, Error, Result};
use crate::geom::integrate::{integrate_polynomial, volume, Poly};
use crate::geom::Polyhedron;
use crate::scalar::{frac_pow, Point, Scalar};

/// `∂f(x)`: active gradients plus the normal cone of the domain.
pub fn subdifferential(f: &PolyConvexFunction, x: &[Scalar]) -> Result<Polyhedron> {
    check_dim(f.n(), x.len())?;
    if !f.domain().contains(x) {
        return Err(Error::OutsideDomain);
    }
    let grads: Vec<Point> = f.active_pieces(x).into_iter().map(|p| p.y.clone()).collect();
    let dom = f.domain().hrep();
    let rays: Vec<Point> = dom
        .ineqs
        .iter()
        .filter(|h| h.value(x).is_zero())
        .map(|h| h.a.clone())
        .collect();
    let lines: Vec<Point> = dom.eqs.iter().map(|h| h.a.clone()).collect();
    Polyhedron::from_generators_with_lines(f.n(), &grads, &rays, &lines)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub x: Point,
    /// `∂f(x)`, a full-dimensional polytope.
    pub s: Polyhedron,
    pub fx: Scalar,
}

/// `Θ₀(f; ·)` restricted to a region, as a finite list of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theta0Atoms {
    pub atoms: Vec<Atom>,
}

impl Theta0Atoms {
    /// Total mass `Σ vol(∂f(x))`.
    pub fn mass(&self) -> Result<Scalar> {
        self.atoms.iter().map(|a| volume(&a.s)).sum()
    }
}

/// Atoms of `Θ₀(f; ·)` with `x` in `region`; `region` must lie inside `int dom f`.
pub fn theta0(f: &PolyConvexFunction, region: &Polyhedron) -> Result<Theta0Atoms> {
    check_dim(f.n(), region.dim())?;
    if !region.is_bounded() {
        return Err(Error::NotPolytope);
    }
    if !f.domain().contains_in_interior_polytope(region) {
        return Err(Error::SupportEscapes("region is not inside the interior of dom f".into()));
    }
    theta0_unchecked(f, region)
}

pub(crate) fn theta0_unchecked(f: &PolyConvexFunction, region: &Polyhedron) -> Result<Theta0Atoms> {
    let n = f.n();
    let mut atoms = Vec::new();
    if !f.epigraph().lines().is_empty() {
        return Ok(Theta0Atoms { atoms });
    }
    for v in f.epigraph().vertices() {
        let x = v[..n].to_vec();
        if !region.contains(&x) {
            continue;
        }
        let grads: Vec<Point> = f.active_pieces(&x).into_iter().map(|p| p.y.clone()).collect();
        if grads.len() < n + 1 {
            continue;
        }
        let s = Polyhedron::from_generators(n, &grads, &[])?;
        if s.is_full_dim() {
            atoms.push(Atom { x, s, fx: v[n].clone() });
        }
    }
    Ok(Theta0Atoms { atoms })
}

/// Multi-index over `(x; y, s)`: `x` exponents (length `n`) and `(y, s)` exponents (length `n + 1`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DensityIndex {
    pub x: Vec<u32>,
    pub ys: Vec<u32>,
}

/// Polynomial in `x` whose coefficients are polynomials in `(y, s)` with values in `ℝ^m`.
pub type DensityPoly = BTreeMap<DensityIndex, Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCell {
    pub cell: Polyhedron,
    pub poly: DensityPoly,
}

/// Compactly supported piecewise polynomial `φ: ℝⁿ → Sym^{≤d}(ℝⁿ × ℝ) ⊗ ℝ^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolyDensity {
    n: usize,
    m: usize,
    cells: Vec<DensityCell>,
}

fn mono(x: &[Scalar], e: &[u32]) -> Scalar {
    x.iter().zip(e).map(|(v, &k)| frac_pow(v, k)).product()
}

impl PiecewisePolyDensity {
    pub fn new(n: usize, m: usize, cells: Vec<DensityCell>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("value dimension m must be at least 1".into()));
        }
        if cells.is_empty() {
            return Err(Error::EmptyInput);
        }
        for c in &cells {
            check_dim(n, c.cell.dim())?;
            if !c.cell.is_bounded() {
                return Err(Error::NotPolytope);
            }
            for (k, v) in &c.poly {
                check_dim(n, k.x.len())?;
                check_dim(n + 1, k.ys.len())?;
                check_dim(m, v.len())?;
            }
        }
        let density = PiecewisePolyDensity { n, m, cells };
        density.check_continuity()?;
        Ok(density)
    }

    /// `φ ≡ value` (a constant in `Sym⁰`) on one cell.
    pub fn constant(cell: Polyhedron, value: Vec<Scalar>) -> Result<Self> {
        let n = cell.dim();
        let m = value.len();
        let mut poly = DensityPoly::new();
        poly.insert(DensityIndex { x: vec![0; n], ys: vec![0; n + 1] }, value);
        PiecewisePolyDensity::new(n, m, vec![DensityCell { cell, poly }])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cells(&self) -> &[DensityCell] {
        &self.cells
    }

    /// Maximal total degree in `(y, s)`.
    pub fn degree(&self) -> u32 {
        self.cells
            .iter()
            .flat_map(|c| c.poly.iter())
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
            .map(|(k, _)| k.ys.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Every term has `(y, s)`-degree exactly `degree()`.
    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.cells
            .iter()
            .flat_map(|c| c.poly.iter())
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
            .all(|(k, _)| k.ys.iter().sum::<u32>() == d)
    }

    /// Union of the cells, as the hull of all cell vertices (a superset of the support).
    pub fn hull(&self) -> Result<Polyhedron> {
        let pts: Vec<Point> = self.cells.iter().flat_map(|c| c.cell.vertices().iter().cloned()).collect();
        crate::geom::convex_hull(&pts)
    }

    /// The `(y, s)`-polynomial `φ(x)` with `ℝ^m` coefficients; zero outside every cell.
    pub fn at(&self, x: &[Scalar]) -> BTreeMap<Vec<u32>, Vec<Scalar>> {
        let mut out: BTreeMap<Vec<u32>, Vec<Scalar>> = BTreeMap::new();
        if let Some(c) = self.cells.iter().find(|c| c.cell.contains(x)) {
            for (k, v) in &c.poly {
                let w = mono(x, &k.x);
                let slot = out.entry(k.ys.clone()).or_insert_with(|| vec![Scalar::zero(); self.m]);
                for (s, c) in slot.iter_mut().zip(v) {
                    *s += &w * c;
                }
            }
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        out
    }

    /// `φ(x)[y, s]`.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        let mut ys = y.to_vec();
        ys.push(s.clone());
        let mut out = vec![Scalar::zero(); self.m];
        for (e, v) in self.at(x) {
            let w = mono(&ys, &e);
            for (o, c) in out.iter_mut().zip(&v) {
                *o += &w * c;
            }
        }
        out
    }

    fn check_continuity(&self) -> Result<()> {
        for (i, a) in self.cells.iter().enumerate() {
            for b in &self.cells[i + 1..] {
                let common = a.cell.intersect_polyhedron(&b.cell)?;
                for v in common.vertices() {
                    if poly_at(&a.poly, v, self.m) != poly_at(&b.poly, v, self.m) {
                        return Err(Error::InvalidArgument("density is discontinuous across cells".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `t·φ` coefficientwise.
    pub fn scaled(&self, t: &Scalar) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| DensityCell {
                cell: c.cell.clone(),
                poly: c.poly.iter().map(|(k, v)| (k.clone(), v.iter().map(|x| x * t).collect())).collect(),
            })
            .collect();
        PiecewisePolyDensity { n: self.n, m: self.m, cells }
    }
}

fn poly_at(p: &DensityPoly, x: &[Scalar], m: usize) -> BTreeMap<Vec<u32>, Vec<Scalar>> {
    let mut out: BTreeMap<Vec<u32>, Vec<Scalar>> = BTreeMap::new();
    for (k, v) in p {
        let w = mono(x, &k.x);
        let slot = out.entry(k.ys.clone()).or_insert_with(|| vec![Scalar::zero(); m]);
        for (s, c) in slot.iter_mut().zip(v) {
            *s += &w * c;
        }
    }
    out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    out
}

/// `∫ φ(x)[y, f(x)] dΘ₀(f; (x, y))` over atoms in the region.
pub fn integrate_against_theta0(
    f: &PolyConvexFunction,
    phi: &PiecewisePolyDensity,
    region: &Polyhedron,
) -> Result<Vec<Scalar>> {
    check_dim(f.n(), phi.n())?;
    for c in phi.cells() {
        if !region.contains_polyhedron(&c.cell) {
            return Err(Error::SupportEscapes("density cell leaves the region".into()));
        }
    }
    let atoms = theta0(f, region)?;
    integrate_atoms(&atoms, phi)
}

/// `Σ_atoms ∫_{∂f(x)} φ(x)[y, f(x)] dy`.
pub fn integrate_atoms(atoms: &Theta0Atoms, phi: &PiecewisePolyDensity) -> Result<Vec<Scalar>> {
    let n = phi.n();
    let mut total = vec![Scalar::zero(); phi.m()];
    for atom in &atoms.atoms {
        let local = phi.at(&atom.x);
        if local.is_empty() {
            continue;
        }
        for (e, v) in local {
            let alpha = e[..n].to_vec();
            let mut poly = Poly::new();
            poly.insert(alpha, frac_pow(&atom.fx, e[n]));
            let w = integrate_polynomial(&atom.s, &poly)?;
            for (t, c) in total.iter_mut().zip(&v) {
                *t += &w * c;
            }
        }
    }
    Ok(total)
}

/// Catalog bump shapes for probing valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// `b(x) = max(0, 1 − ‖x − x₀‖₁/δ)`.
    Hinge { center: Point, delta: Scalar },
}

impl Shape {
    pub fn hinge(center: Point, delta: Scalar) -> Result<Shape> {
        if !delta.is_positive() {
            return Err(Error::InvalidArgument("bump radius must be positive".into()));
        }
        Ok(Shape::Hinge { center, delta })
    }

    /// Builds a shape from a catalog name.
    pub fn from_name(name: &str, center: Point, delta: Scalar) -> Result<Shape> {
        match name {
            "hinge" => Shape::hinge(center, delta),
            other => Err(Error::UnknownShape(other.to_string())),
        }
    }

    /// Closed `ℓ¹` ball carrying the bump, as a polytope.
    pub fn support(&self) -> Result<Polyhedron> {
        let Shape::Hinge { center, delta } = self;
        let n = center.len();
        let mut pts = Vec::with_capacity(2 * n);
        for i in 0..n {
            for sign in [1, -1] {
                let mut p = center.clone();
                p[i] += Scalar::from_integer(sign.into()) * delta;
                pts.push(p);
            }
        }
        crate::geom::convex_hull(&pts)
    }
}

/// `‖x − x₀‖₁/δ` as a max of `2ⁿ` affine forms.
fn scaled_l1(center: &[Scalar], delta: &Scalar) -> Result<PolyConvexFunction> {
    let n = center.len();
    let mut pieces = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        let y: Point = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    -Scalar::one() / delta
                } else {
                    Scalar::one() / delta
                }
            })
            .collect();
        let c = -crate::scalar::dot(&y, center);
        pieces.push(AffineForm::new(y, c));
    }
    PolyConvexFunction::new(n, &pieces, None)
}

/// Closed-form DC split `b = g − h` with `g = max(c − 1, 0) + 1`, `h = c`, `c = ‖x − x₀‖₁/δ`.
pub fn dc_decompose_catalog(shape: &Shape) -> Result<(PolyConvexFunction, PolyConvexFunction)> {
    let Shape::Hinge { center, delta } = shape;
    let n = center.len();
    let c = scaled_l1(center, delta)?;
    let one = PolyConvexFunction::affine(vec![Scalar::zero(); n], Scalar::one())?;
    Ok((c.pointwise_max(&one)?, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::Value;
    use crate::scalar::{frac, int, point};

    fn l1(n: usize) -> PolyConvexFunction {
        scaled_l1(&vec![int(0); n], &int(1)).unwrap()
    }

    #[test]
    fn subdifferential_examples() {
        let s = subdifferential(&l1(1), &point(&[0])).unwrap();
        assert_eq!(s, Polyhedron::cube(1, &int(1)).unwrap());
        let s = subdifferential(&l1(2), &point(&[0, 0])).unwrap();
        assert_eq!(s, Polyhedron::cube(2, &int(1)).unwrap());
        let ind = PolyConvexFunction::indicator(&Polyhedron::cube(1, &int(1)).unwrap()).unwrap();
        let s = subdifferential(&ind, &point(&[1])).unwrap();
        assert_eq!(s, Polyhedron::from_generators(1, &[point(&[0])], &[point(&[1])]).unwrap());
        assert_eq!(subdifferential(&ind, &point(&[2])), Err(Error::OutsideDomain));
    }

    #[test]
    fn theta0_examples() {
        let region = Polyhedron::cube(1, &int(1)).unwrap();
        let t = theta0(&l1(1), &region).unwrap();
        assert_eq!(t.atoms.len(), 1);
        assert_eq!(t.atoms[0].x, point(&[0]));
        assert_eq!(t.atoms[0].fx, int(0));
        assert_eq!(t.mass().unwrap(), int(2));
        let aff = PolyConvexFunction::affine(point(&[1, 2]), int(3)).unwrap();
        assert!(theta0(&aff, &Polyhedron::cube(2, &int(1)).unwrap()).unwrap().atoms.is_empty());
        for n in 1..=3 {
            let t = theta0(&l1(n), &Polyhedron::cube(n, &int(1)).unwrap()).unwrap();
            assert_eq!(t.mass().unwrap(), int(1 << n));
        }
    }

    #[test]
    fn integration_examples() {
        let region = Polyhedron::cube(1, &int(1)).unwrap();
        let cell = Polyhedron::cube(1, &frac(1, 2)).unwrap();
        let mut odd = DensityPoly::new();
        odd.insert(DensityIndex { x: vec![0], ys: vec![1, 0] }, vec![int(1)]);
        let phi = PiecewisePolyDensity::new(1, 1, vec![DensityCell { cell: cell.clone(), poly: odd }]).unwrap();
        assert_eq!(integrate_against_theta0(&l1(1), &phi, &region).unwrap(), vec![int(0)]);
        let mut s = DensityPoly::new();
        s.insert(DensityIndex { x: vec![0], ys: vec![0, 1] }, vec![int(1)]);
        let phi = PiecewisePolyDensity::new(1, 1, vec![DensityCell { cell, poly: s }]).unwrap();
        let f = l1(1).add_affine(&AffineForm::new(point(&[0]), int(1))).unwrap();
        assert_eq!(integrate_against_theta0(&f, &phi, &region).unwrap(), vec![int(2)]);
    }

    #[test]
    fn hinge_bump() {
        let shape = Shape::hinge(point(&[0]), int(1)).unwrap();
        let (g, h) = dc_decompose_catalog(&shape).unwrap();
        let b = |x: Scalar| match (g.eval(&[x.clone()]), h.eval(&[x])) {
            (Value::Finite(a), Value::Finite(b)) => a - b,
            _ => unreachable!(),
        };
        assert_eq!(b(int(0)), int(1));
        assert_eq!(b(frac(1, 2)), frac(1, 2));
        assert_eq!(b(int(1)), int(0));
        assert_eq!(b(int(-3)), int(0));
        assert_eq!(Shape::from_name("gauss", point(&[0]), int(1)), Err(Error::UnknownShape("gauss".into())));
    }
}
