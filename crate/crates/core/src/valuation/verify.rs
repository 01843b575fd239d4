use num::Zero;

use super::{ValCone, Valuation};
use crate::convex::{floor_body, lift_ha, support_function, PolyConvexFunction};
use crate::dual::inf_conv;
use crate::error::{Error, Result};
use crate::geom::{Halfspace, HalfspaceSystem, Polyhedron};
use crate::random::{random_polytope, rng, small_point, Gen};
use crate::scalar::{dot, is_zero_vec, Point, Scalar};

/// Splits `k` by the hyperplane `⟨normal, x⟩ = ⟨normal, avg⟩` through its vertex average.
pub fn cut_body_pair(k: &Polyhedron, normal: &[Scalar]) -> Result<(Polyhedron, Polyhedron)> {
    if is_zero_vec(normal) {
        return Err(Error::InvalidArgument("cut normal must be nonzero".into()));
    }
    let verts = k.vertices();
    if verts.is_empty() || !k.is_bounded() {
        return Err(Error::NotPolytope);
    }
    let count = Scalar::from_integer((verts.len() as i64).into());
    let mut avg = vec![Scalar::from_integer(0.into()); k.dim()];
    for v in verts {
        for (a, x) in avg.iter_mut().zip(v) {
            *a += x;
        }
    }
    let avg: Point = avg.into_iter().map(|x| x / &count).collect();
    let b = dot(normal, &avg);
    let below = HalfspaceSystem::new(k.dim(), vec![Halfspace::new(normal.to_vec(), b.clone())])?;
    let above = HalfspaceSystem::new(k.dim(), vec![Halfspace::new(normal.iter().map(|x| -x).collect(), -b)])?;
    Ok((k.intersect(&below)?, k.intersect(&above)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub trial: usize,
    pub f: PolyConvexFunction,
    pub h: PolyConvexFunction,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.checked == self.trials
    }
}

fn member_of_body(cone: &ValCone, k: &Polyhedron) -> Result<PolyConvexFunction> {
    match cone {
        ValCone::Primal(c) => lift_ha(k, c.a()),
        ValCone::Dual { primal, .. } => {
            let fl = floor_body(k)?;
            if primal.a().is_whole_space() {
                Ok(fl)
            } else {
                inf_conv(&fl, &support_function(primal.a())?)
            }
        }
    }
}

fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn trial_pair(rng: &mut Gen, cone: &ValCone) -> Result<(PolyConvexFunction, PolyConvexFunction)> {
    let n = cone.n();
    loop {
        let k = random_polytope(rng, n + 1, n + 4, 2)?;
        let normal = small_point(rng, n + 1, 3, 1);
        // dual members have compact domains; a vertical cut would make them meet thinly
        if is_zero_vec(&normal) || (cone.is_dual() && normal[n].is_zero()) {
            continue;
        }
        let (k1, k2) = cut_body_pair(&k, &normal)?;
        return Ok((member_of_body(cone, &k1)?, member_of_body(cone, &k2)?));
    }
}

/// Checks `Z(f ∨ h) + Z(f ∧ h) = Z(f) + Z(h)` on `trials` hyperplane-cut body pairs.
pub fn verify_valuation_identity(z: &Valuation, trials: usize, seed: u64) -> Result<VerifyReport> {
    let mut g = rng(seed);
    let mut violations = Vec::new();
    let mut checked = 0;
    for trial in 0..trials {
        let (f, h) = trial_pair(&mut g, &z.cone)?;
        let max = f.pointwise_max(&h)?;
        let Some(min) = f.pointwise_min_checked(&h)? else {
            continue;
        };
        let lhs = add_vec(&z.evaluate(&max)?, &z.evaluate(&min)?);
        let rhs = add_vec(&z.evaluate(&f)?, &z.evaluate(&h)?);
        checked += 1;
        if lhs != rhs {
            violations.push(Violation { trial, f, h, lhs, rhs });
        }
    }
    Ok(VerifyReport { trials, checked, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::ConeSpec;
    use crate::hessian::PiecewisePolyDensity;
    use crate::scalar::{int, point};
    use crate::valuation::{dualize_valuation, make_broken_max, make_dirichlet, make_top_degree};

    fn interval(a: i64, b: i64) -> Polyhedron {
        Polyhedron::cuboid(&[int(a)], &[int(b)]).unwrap()
    }

    #[test]
    fn cut_halves_cover_body() {
        let k = Polyhedron::cube(2, &int(1)).unwrap();
        let (a, b) = cut_body_pair(&k, &point(&[1, 1])).unwrap();
        assert!(a.is_full_dim() && b.is_full_dim());
        let hull = crate::geom::convex_hull(&[a.vertices(), b.vertices()].concat()).unwrap();
        assert_eq!(hull, k);
    }

    #[test]
    fn built_ins_pass() {
        let phi = PiecewisePolyDensity::constant(interval(-1, 1), vec![int(1)]).unwrap();
        let z = make_top_degree(phi, ConeSpec::with_o(interval(-3, 3)).unwrap()).unwrap();
        assert!(verify_valuation_identity(&z, 20, 1).unwrap().passed());
        let z = make_dirichlet(interval(-1, 1), ConeSpec::with_o(interval(-3, 3)).unwrap()).unwrap();
        assert!(verify_valuation_identity(&z, 20, 2).unwrap().passed());
        let dz = dualize_valuation(&z).unwrap();
        assert!(verify_valuation_identity(&dz, 10, 3).unwrap().passed());
    }

    #[test]
    fn broken_kernel_flagged() {
        let z = make_broken_max(vec![point(&[-1]), point(&[1])]).unwrap();
        assert!(!verify_valuation_identity(&z, 40, 4).unwrap().violations.is_empty());
    }
}
