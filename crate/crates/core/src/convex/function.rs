//! Piecewise-linear convex functions `f = max ℓᵢ + I_dom`.
//!
//! The function is stored through its epigraph, a polyhedron in `ℝ^{n+1}`.
//! Pieces are read off the non-vertical facets and the domain is the
//! projection, so equal functions have equal representations.

use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::geom::{Halfspace, Polyhedron};
use crate::scalar::{dot, format_scalar, sub, Point, Pt, Scalar};

/// `ℓ(x) = ⟨y, x⟩ + c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub y: Point,
    pub c: Scalar,
}

impl AffineForm {
    pub fn new(y: Point, c: Scalar) -> Self {
        AffineForm { y, c }
    }

    pub fn zero(n: usize) -> Self {
        AffineForm { y: vec![Scalar::zero(); n], c: Scalar::zero() }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        dot(&self.y, x) + &self.c
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> + {}", Pt(&self.y), format_scalar(&self.c))
    }
}

/// Extended real value: finite or `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Value {
    Finite(Scalar),
    PlusInfinity,
}

impl Value {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Value::Finite(v) => Some(v),
            Value::PlusInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::PlusInfinity)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => f.write_str(&format_scalar(v)),
            Value::PlusInfinity => f.write_str("+inf"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PolyConvexFunction {
    n: usize,
    epi: Polyhedron,
    pieces: Vec<AffineForm>,
    domain: Polyhedron,
}

impl PartialEq for PolyConvexFunction {
    fn eq(&self, other: &Self) -> bool {
        self.epi == other.epi
    }
}

impl Eq for PolyConvexFunction {}

fn vertical(n: usize) -> Point {
    let mut v = vec![Scalar::zero(); n + 1];
    v[n] = Scalar::one();
    v
}

fn lift_row(h: &Halfspace) -> Halfspace {
    let mut a = h.a.clone();
    a.push(Scalar::zero());
    Halfspace::new(a, h.b.clone())
}

impl PolyConvexFunction {
    /// `max pieces + I_domain`; `None` means the whole space.
    pub fn new(n: usize, pieces: &[AffineForm], domain: Option<&Polyhedron>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyInput);
        }
        for p in pieces {
            check_dim(n, p.n())?;
        }
        let mut ineqs: Vec<Halfspace> = pieces
            .iter()
            .map(|p| {
                let mut a = p.y.clone();
                a.push(-Scalar::one());
                Halfspace::new(a, -p.c.clone())
            })
            .collect();
        let mut eqs = Vec::new();
        if let Some(dom) = domain {
            check_dim(n, dom.dim())?;
            if dom.is_empty() {
                return Err(Error::Improper("empty domain".into()));
            }
            ineqs.extend(dom.hrep().ineqs.iter().map(lift_row));
            eqs.extend(dom.hrep().eqs.iter().map(lift_row));
        }
        let epi = Polyhedron::from_constraints(n + 1, &ineqs, &eqs)?;
        PolyConvexFunction::from_epigraph(&epi)
    }

    pub fn affine(y: Point, c: Scalar) -> Result<Self> {
        let n = y.len();
        PolyConvexFunction::new(n, &[AffineForm::new(y, c)], None)
    }

    /// `I_P`; `P` must be full dimensional.
    pub fn indicator(p: &Polyhedron) -> Result<Self> {
        if !p.is_full_dim() {
            return Err(Error::ThinSet);
        }
        PolyConvexFunction::indicator_of(p)
    }

    /// `I_P` for any nonempty `P`, thin sets included.
    pub fn indicator_of(p: &Polyhedron) -> Result<Self> {
        PolyConvexFunction::new(p.dim(), &[AffineForm::zero(p.dim())], Some(p))
    }

    /// The function whose epigraph is `epi`.
    pub fn from_epigraph(epi: &Polyhedron) -> Result<Self> {
        if epi.dim() == 0 {
            return Err(Error::InvalidArgument("epigraph needs ambient dimension at least 1".into()));
        }
        let n = epi.dim() - 1;
        if epi.is_empty() {
            return Err(Error::Improper("empty epigraph".into()));
        }
        let up = vertical(n);
        if !epi.recedes(&up) {
            return Err(Error::InvalidArgument("not an epigraph: missing the vertical ray".into()));
        }
        let down: Point = up.iter().map(|x| -x).collect();
        if epi.recedes(&down) {
            return Err(Error::Improper("function is -inf".into()));
        }
        let mut pieces: Vec<AffineForm> = Vec::new();
        for h in &epi.hrep().ineqs {
            let at = &h.a[n];
            if at.is_negative() {
                let s = -at.clone();
                let y: Point = h.a[..n].iter().map(|x| x / &s).collect();
                pieces.push(AffineForm::new(y, -&h.b / &s));
            }
        }
        if pieces.is_empty() {
            // thin domain where the epigraph is a half line over a point in every direction
            return Err(Error::Improper("no lower boundary".into()));
        }
        pieces.sort();
        let domain = epi.project_out_last()?;
        Ok(PolyConvexFunction { n, epi: epi.clone(), pieces, domain })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epigraph(&self) -> &Polyhedron {
        &self.epi
    }

    /// Canonical pieces; on a thin domain they are reduced modulo the affine hull.
    pub fn pieces(&self) -> &[AffineForm] {
        &self.pieces
    }

    pub fn domain(&self) -> &Polyhedron {
        &self.domain
    }

    pub fn domain_is_all(&self) -> bool {
        self.domain.is_whole_space()
    }

    pub fn has_solid_domain(&self) -> bool {
        self.domain.is_full_dim()
    }

    pub fn eval(&self, x: &[Scalar]) -> Value {
        if x.len() != self.n || !self.domain.contains(x) {
            return Value::PlusInfinity;
        }
        Value::Finite(self.max_piece(x))
    }

    /// Value at a point known to be in the domain.
    pub fn eval_finite(&self, x: &[Scalar]) -> Result<Scalar> {
        check_dim(self.n, x.len())?;
        if !self.domain.contains(x) {
            return Err(Error::OutsideDomain);
        }
        Ok(self.max_piece(x))
    }

    fn max_piece(&self, x: &[Scalar]) -> Scalar {
        self.pieces
            .iter()
            .map(|p| p.eval(x))
            .max()
            .expect("pieces are nonempty")
    }

    /// Pieces attaining the maximum at `x`.
    pub fn active_pieces(&self, x: &[Scalar]) -> Vec<&AffineForm> {
        let v = self.max_piece(x);
        self.pieces.iter().filter(|p| p.eval(x) == v).collect()
    }

    /// Maximal cells `{x ∈ dom : ℓᵢ(x) ≥ ℓⱼ(x) ∀j}`, one per piece.
    pub fn cells(&self) -> Result<Vec<(AffineForm, Polyhedron)>> {
        let dom = self.domain.hrep();
        let mut out = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let mut rows = dom.ineqs.clone();
            for q in &self.pieces {
                if q != p {
                    rows.push(Halfspace::new(sub(&q.y, &p.y), &p.c - &q.c));
                }
            }
            let cell = Polyhedron::from_constraints(self.n, &rows, &dom.eqs)?;
            out.push((p.clone(), cell));
        }
        Ok(out)
    }

    /// `x`-coordinates of the epigraph vertices: the 0-cells of the cell complex.
    pub fn cell_vertices(&self) -> Vec<Point> {
        self.epi.vertices().iter().map(|v| v[..self.n].to_vec()).collect()
    }

    /// `f ∨ g`.
    pub fn pointwise_max(&self, g: &PolyConvexFunction) -> Result<Self> {
        check_dim(self.n, g.n)?;
        let epi = self.epi.intersect_polyhedron(&g.epi)?;
        self.check_proper_meet(g, &epi)?;
        PolyConvexFunction::from_epigraph(&epi)
    }

    fn check_proper_meet(&self, g: &PolyConvexFunction, epi: &Polyhedron) -> Result<()> {
        if epi.is_empty() {
            return Err(Error::Improper("domains do not meet".into()));
        }
        if self.has_solid_domain() && g.has_solid_domain() && !epi.is_full_dim() {
            return Err(Error::Improper("domain intersection has empty interior".into()));
        }
        Ok(())
    }

    /// `f ∧ g` when it is convex, `None` otherwise.
    ///
    /// Convexity is decided on the epigraphs: with `E` the polyhedron cut out
    /// by the rows of each epigraph that are valid for the other, the union is
    /// convex iff `E ⊆ epi f ∪ epi g`, and then `E` is the epigraph of the min.
    pub fn pointwise_min_checked(&self, g: &PolyConvexFunction) -> Result<Option<Self>> {
        check_dim(self.n, g.n)?;
        let (p, q) = (&self.epi, &g.epi);
        let rows_p = all_rows(p);
        let rows_q = all_rows(q);
        let mut env: Vec<Halfspace> = rows_p.iter().filter(|h| valid_for(h, q)).cloned().collect();
        env.extend(rows_q.iter().filter(|h| valid_for(h, p)).cloned());
        let env = Polyhedron::from_constraints(self.n + 1, &env, &[])?;
        for (rows, other) in [(&rows_p, q), (&rows_q, p)] {
            for h in rows.iter() {
                let flipped = Halfspace::new(h.a.iter().map(|x| -x).collect(), -h.b.clone());
                let beyond = env.intersect_polyhedron(&Polyhedron::from_constraints(self.n + 1, &[flipped], &[])?)?;
                if beyond.is_empty() || !strictly_beyond(&beyond, h) {
                    continue;
                }
                if !other.contains_polyhedron(&beyond) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(PolyConvexFunction::from_epigraph(&env)?))
    }

    /// `f + g`.
    pub fn add(&self, g: &PolyConvexFunction) -> Result<Self> {
        check_dim(self.n, g.n)?;
        let mut pieces = Vec::with_capacity(self.pieces.len() * g.pieces.len());
        for p in &self.pieces {
            for q in &g.pieces {
                pieces.push(AffineForm::new(crate::scalar::add(&p.y, &q.y), &p.c + &q.c));
            }
        }
        let dom = self.domain.intersect_polyhedron(&g.domain)?;
        if dom.is_empty() {
            return Err(Error::Improper("domains do not meet".into()));
        }
        if self.has_solid_domain() && g.has_solid_domain() && !dom.is_full_dim() {
            return Err(Error::Improper("domain intersection has empty interior".into()));
        }
        PolyConvexFunction::new(self.n, &pieces, Some(&dom))
    }

    /// `t·f` for `t > 0`.
    pub fn scale(&self, t: &Scalar) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let pieces: Vec<AffineForm> = self
            .pieces
            .iter()
            .map(|p| AffineForm::new(p.y.iter().map(|x| x * t).collect(), &p.c * t))
            .collect();
        PolyConvexFunction::new(self.n, &pieces, Some(&self.domain))
    }

    /// `f + ℓ` for an affine `ℓ`.
    pub fn add_affine(&self, l: &AffineForm) -> Result<Self> {
        check_dim(self.n, l.n())?;
        let pieces: Vec<AffineForm> = self
            .pieces
            .iter()
            .map(|p| AffineForm::new(crate::scalar::add(&p.y, &l.y), &p.c + &l.c))
            .collect();
        PolyConvexFunction::new(self.n, &pieces, Some(&self.domain))
    }

    /// `(τ_X f)(z) = f(z − x) + t`.
    pub fn epi_translate(&self, x: &[Scalar], t: &Scalar) -> Result<Self> {
        check_dim(self.n, x.len())?;
        let mut shift = x.to_vec();
        shift.push(t.clone());
        PolyConvexFunction::from_epigraph(&self.epi.translate(&shift)?)
    }

    /// `f ≤ g` everywhere (with `+∞` handled).
    pub fn le(&self, g: &PolyConvexFunction) -> bool {
        self.epi.contains_polyhedron(&g.epi)
    }
}

fn all_rows(p: &Polyhedron) -> Vec<Halfspace> {
    let h = p.hrep();
    let mut rows = h.ineqs.clone();
    for e in &h.eqs {
        rows.push(e.clone());
        rows.push(Halfspace::new(e.a.iter().map(|x| -x).collect(), -e.b.clone()));
    }
    rows
}

fn valid_for(h: &Halfspace, p: &Polyhedron) -> bool {
    p.vertices().iter().all(|v| !h.value(v).is_positive())
        && p.rays().iter().all(|r| !dot(&h.a, r).is_positive())
        && p.lines().iter().all(|l| dot(&h.a, l).is_zero())
}

/// `r` (inside `{⟨a,x⟩ ≥ b}`) has points with `⟨a,x⟩ > b`.
fn strictly_beyond(r: &Polyhedron, h: &Halfspace) -> bool {
    r.vertices().iter().any(|v| h.value(v).is_positive())
        || r.rays().iter().any(|d| dot(&h.a, d).is_positive())
        || r.lines().iter().any(|l| !dot(&h.a, l).is_zero())
}

impl fmt::Display for PolyConvexFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "max(")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")?;
        if !self.domain_is_all() {
            write!(f, " on {} vertices", self.domain.vertices().len())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, point};

    pub(crate) fn abs1() -> PolyConvexFunction {
        PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[-1]), int(0))],
            None,
        )
        .unwrap()
    }

    fn interval(a: i64, b: i64) -> Polyhedron {
        Polyhedron::cuboid(&[int(a)], &[int(b)]).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(abs1().eval(&point(&[3])), Value::Finite(int(3)));
        let ind = PolyConvexFunction::indicator(&interval(-1, 1)).unwrap();
        assert_eq!(ind.eval(&point(&[2])), Value::PlusInfinity);
        assert_eq!(ind.eval(&point(&[0])), Value::Finite(int(0)));
        let f = PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[2]), int(-1))],
            None,
        )
        .unwrap();
        assert_eq!(f.eval(&point(&[1])), Value::Finite(int(1)));
    }

    #[test]
    fn never_active_pieces_are_dropped() {
        let f = PolyConvexFunction::new(
            1,
            &[
                AffineForm::new(point(&[1]), int(0)),
                AffineForm::new(point(&[-1]), int(0)),
                AffineForm::new(point(&[0]), int(-5)),
            ],
            None,
        )
        .unwrap();
        assert_eq!(f, abs1());
        assert_eq!(f.pieces().len(), 2);
    }

    #[test]
    fn lattice_examples() {
        let one = PolyConvexFunction::affine(point(&[0]), int(1)).unwrap();
        let m = abs1().pointwise_max(&one).unwrap();
        assert_eq!(m.pieces().len(), 3);
        assert_eq!(m.eval(&point(&[0])), Value::Finite(int(1)));
        assert_eq!(abs1().pointwise_max(&abs1()).unwrap(), abs1());
        assert_eq!(abs1().pointwise_min_checked(&abs1()).unwrap(), Some(abs1()));
        let x = PolyConvexFunction::affine(point(&[1]), int(0)).unwrap();
        let mx = PolyConvexFunction::affine(point(&[-1]), int(0)).unwrap();
        assert_eq!(x.pointwise_min_checked(&mx).unwrap(), None);
    }

    #[test]
    fn min_of_ramps_is_convex() {
        // max(x,0) ∧ max(2x,0) = max(x,0)... on x ≥ 0 min is x, on x ≤ 0 both 0
        let a = PolyConvexFunction::new(1, &[AffineForm::new(point(&[1]), int(0)), AffineForm::zero(1)], None).unwrap();
        let b = PolyConvexFunction::new(1, &[AffineForm::new(point(&[2]), int(0)), AffineForm::zero(1)], None).unwrap();
        assert_eq!(a.pointwise_min_checked(&b).unwrap(), Some(a.clone()));
        // indicators of overlapping intervals: union convex
        let i1 = PolyConvexFunction::indicator(&interval(0, 2)).unwrap();
        let i2 = PolyConvexFunction::indicator(&interval(1, 3)).unwrap();
        let m = i1.pointwise_min_checked(&i2).unwrap().unwrap();
        assert_eq!(m, PolyConvexFunction::indicator(&interval(0, 3)).unwrap());
        // disjoint intervals: not convex
        let i3 = PolyConvexFunction::indicator(&interval(4, 5)).unwrap();
        assert_eq!(i1.pointwise_min_checked(&i3).unwrap(), None);
    }

    #[test]
    fn arithmetic() {
        let two_abs = PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[2]), int(0)), AffineForm::new(point(&[-2]), int(0))],
            None,
        )
        .unwrap();
        assert_eq!(abs1().add(&abs1()).unwrap(), two_abs);
        assert_eq!(abs1().scale(&int(2)).unwrap(), two_abs);
        let f = PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[2]), int(-1))],
            None,
        )
        .unwrap();
        let g = PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[3]), int(0)), AffineForm::new(point(&[6]), int(-3))],
            None,
        )
        .unwrap();
        assert_eq!(f.scale(&int(3)).unwrap(), g);
        let ind = PolyConvexFunction::indicator(&interval(-1, 1)).unwrap();
        let s = abs1().add(&ind).unwrap();
        assert_eq!(s.domain(), &interval(-1, 1));
        let i2 = PolyConvexFunction::indicator(&interval(0, 3)).unwrap();
        assert_eq!(ind.add(&i2).unwrap(), PolyConvexFunction::indicator(&interval(0, 1)).unwrap());
    }

    #[test]
    fn translations() {
        let shifted = abs1().epi_translate(&point(&[1]), &int(0)).unwrap();
        let expected = PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[1]), int(-1)), AffineForm::new(point(&[-1]), int(1))],
            None,
        )
        .unwrap();
        assert_eq!(shifted, expected);
        let up = abs1().epi_translate(&point(&[0]), &frac(5, 2)).unwrap();
        assert_eq!(up.eval(&point(&[1])), Value::Finite(frac(7, 2)));
    }

    #[test]
    fn thin_indicator_rejected() {
        let pt = crate::geom::convex_hull(&[point(&[0])]).unwrap();
        assert_eq!(PolyConvexFunction::indicator(&pt), Err(Error::ThinSet));
        assert!(PolyConvexFunction::indicator_of(&pt).is_ok());
    }

    #[test]
    fn cells_of_abs() {
        let cells = abs1().cells().unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(abs1().cell_vertices(), vec![point(&[0])]);
    }
}
