//! Extending a valuation from a small cone to a larger one and checking locality.

use cvlab::convex::{AffineForm, ConeSpec, PolyConvexFunction};
use cvlab::geom::Polyhedron;
use cvlab::scalar::{format_scalar, frac, int, point};
use cvlab::suite::{default_cone, tent_density};
use cvlab::valuation::{extend_valuation, make_top_degree};

fn main() -> cvlab::Result<()> {
    let z = make_top_degree(tent_density()?, default_cone(1)?)?;
    let a = Polyhedron::cube(1, &frac(3, 2))?;
    let wide = Polyhedron::cube(1, &frac(5, 2))?;
    let target = ConeSpec::new(wide.clone(), wide.clone())?;
    let ext = extend_valuation(&z, &a, target, &frac(1, 4))?;

    // functions on the target cone; on A they agree with members of the original cone
    for k in 1..=3 {
        let f = PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[k]), int(0)), AffineForm::new(point(&[-1]), frac(1, 2))],
            Some(&wide),
        )?;
        let full = PolyConvexFunction::new(1, f.pieces(), None)?;
        println!(
            "slope {k}: extension = {}, original = {}",
            format_scalar(&ext.evaluate(&f)?[0]),
            format_scalar(&z.evaluate(&full)?[0])
        );
    }
    Ok(())
}
