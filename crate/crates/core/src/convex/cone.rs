//! `(𝒜, 𝒪)`-cones and their duals.

use super::conjugate::support_epigraph;
use super::function::PolyConvexFunction;
use crate::error::{check_dim, Error, Result};
use crate::geom::Polyhedron;

/// Domains `𝒪 ⊆ 𝒜` pinching the domains of cone members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSpec {
    a: Polyhedron,
    o: Polyhedron,
}

/// Outcome of a membership test with the first failing condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub reason: Option<String>,
}

impl Membership {
    fn yes() -> Self {
        Membership { member: true, reason: None }
    }

    fn no(reason: impl Into<String>) -> Self {
        Membership { member: false, reason: Some(reason.into()) }
    }

    pub fn into_result(self) -> Result<()> {
        match self.reason {
            None => Ok(()),
            Some(r) => Err(Error::ConeViolation(r)),
        }
    }
}

impl ConeSpec {
    pub fn new(a: Polyhedron, o: Polyhedron) -> Result<Self> {
        check_dim(a.dim(), o.dim())?;
        if !a.is_full_dim() || !o.is_full_dim() {
            return Err(Error::ThinSet);
        }
        if !a.contains_polyhedron(&o) {
            return Err(Error::InvalidArgument("cone requires O ⊆ A".into()));
        }
        Ok(ConeSpec { a, o })
    }

    /// `𝒜 = 𝒪 = ℝⁿ`: every function with full domain.
    pub fn full(n: usize) -> Self {
        ConeSpec { a: Polyhedron::whole(n), o: Polyhedron::whole(n) }
    }

    /// `𝒜 = ℝⁿ` with a prescribed `𝒪`.
    pub fn with_o(o: Polyhedron) -> Result<Self> {
        ConeSpec::new(Polyhedron::whole(o.dim()), o)
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &Polyhedron {
        &self.a
    }

    pub fn o(&self) -> &Polyhedron {
        &self.o
    }

    pub fn indicator_a(&self) -> Result<PolyConvexFunction> {
        PolyConvexFunction::indicator(&self.a)
    }

    pub fn indicator_o(&self) -> Result<PolyConvexFunction> {
        PolyConvexFunction::indicator(&self.o)
    }

    /// `𝒪 ⊆ dom f ⊆ 𝒜`.
    pub fn membership(&self, f: &PolyConvexFunction) -> Membership {
        if f.n() != self.n() {
            return Membership::no(format!("dimension {} differs from cone dimension {}", f.n(), self.n()));
        }
        if !f.domain().contains_polyhedron(&self.o) {
            return Membership::no("O is not contained in dom f");
        }
        if !self.a.contains_polyhedron(f.domain()) {
            return Membership::no("dom f is not contained in A");
        }
        Membership::yes()
    }

    /// The dual cone: epigraphs of `h_𝒜` and `h_𝒪` in `ℝ^{n+1}`.
    pub fn dual(&self) -> Result<DualConeSpec> {
        Ok(DualConeSpec {
            big: support_epigraph(&self.a)?,
            small: support_epigraph(&self.o)?,
        })
    }
}

/// The image of an `(𝒜, 𝒪)`-cone under conjugation: `g` is a member iff
/// `epi h_𝒜 ⊆ rec(epi g) ⊆ epi h_𝒪`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualConeSpec {
    big: Polyhedron,
    small: Polyhedron,
}

impl DualConeSpec {
    pub fn n(&self) -> usize {
        self.big.dim() - 1
    }

    /// `epi h_𝒜`.
    pub fn epi_h_a(&self) -> &Polyhedron {
        &self.big
    }

    /// `epi h_𝒪`.
    pub fn epi_h_o(&self) -> &Polyhedron {
        &self.small
    }

    pub fn membership(&self, g: &PolyConvexFunction) -> Membership {
        if g.n() != self.n() {
            return Membership::no(format!("dimension {} differs from cone dimension {}", g.n(), self.n()));
        }
        let rec = match g.epigraph().recession_cone() {
            Ok(r) => r,
            Err(e) => return Membership::no(e.to_string()),
        };
        if !rec.contains_polyhedron(&self.big) {
            return Membership::no("epi h_A is not contained in rec(epi f)");
        }
        if !self.small.contains_polyhedron(&rec) {
            return Membership::no("rec(epi f) is not contained in epi h_O");
        }
        Membership::yes()
    }

    /// `h_𝒜`, the basepoint playing the role of `I_𝒜` on the dual side.
    pub fn support_a(&self) -> Result<PolyConvexFunction> {
        PolyConvexFunction::from_epigraph(&self.big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::conjugate::{conjugate, lift_ha};
    use crate::scalar::{int, point};

    fn interval(a: i64, b: i64) -> Polyhedron {
        Polyhedron::cuboid(&[int(a)], &[int(b)]).unwrap()
    }

    #[test]
    fn indicators_are_members() {
        let c = ConeSpec::new(interval(-3, 3), interval(-1, 1)).unwrap();
        assert!(c.membership(&c.indicator_a().unwrap()).member);
        assert!(c.membership(&c.indicator_o().unwrap()).member);
        let k = crate::geom::convex_hull(&[point(&[0, 0]), point(&[1, 2]), point(&[-1, 1])]).unwrap();
        assert!(c.membership(&lift_ha(&k, c.a()).unwrap()).member);
        let wide = PolyConvexFunction::indicator(&interval(-5, 5)).unwrap();
        let m = c.membership(&wide);
        assert!(!m.member);
        assert!(m.reason.is_some());
    }

    #[test]
    fn bad_specs() {
        assert!(ConeSpec::new(interval(-1, 1), interval(-2, 2)).is_err());
        let pt = crate::geom::convex_hull(&[point(&[0])]).unwrap();
        assert_eq!(ConeSpec::new(interval(-1, 1), pt), Err(Error::ThinSet));
    }

    #[test]
    fn dual_membership_matches_primal() {
        let c = ConeSpec::new(interval(-3, 3), interval(-1, 1)).unwrap();
        let d = c.dual().unwrap();
        for (lo, hi) in [(-2, 2), (-1, 1), (-3, 3), (-4, 4), (0, 1)] {
            let f = PolyConvexFunction::indicator(&interval(lo, hi)).unwrap();
            assert_eq!(c.membership(&f).member, d.membership(&conjugate(&f).unwrap()).member);
        }
    }
}
