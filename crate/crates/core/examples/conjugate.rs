//! Piecewise linear convex functions and their Legendre-Fenchel conjugates.

use cvlab::convex::{conjugate, support_function, AffineForm, PolyConvexFunction};
use cvlab::geom::Polyhedron;
use cvlab::scalar::{frac, int, point};

fn main() -> cvlab::Result<()> {
    let abs = PolyConvexFunction::new(
        1,
        &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[-1]), int(0))],
        None,
    )?;
    let abs_star = conjugate(&abs)?;
    println!("f = |x|        f* = {abs_star}");
    println!("f** == f: {}", conjugate(&abs_star)? == abs);

    // max(x, y, 1 - x - y) on the plane
    let f = PolyConvexFunction::new(
        2,
        &[
            AffineForm::new(point(&[1, 0]), int(0)),
            AffineForm::new(point(&[0, 1]), int(0)),
            AffineForm::new(point(&[-1, -1]), int(1)),
        ],
        None,
    )?;
    println!("f = {f}");
    println!("f(1/3, 1/3) = {}", f.eval(&[frac(1, 3), frac(1, 3)]));
    println!("f* = {}", conjugate(&f)?);

    let g = PolyConvexFunction::affine(point(&[0, 0]), frac(1, 2))?;
    println!("max(f, 1/2) = {}", f.pointwise_max(&g)?);
    println!("f + f = {}", f.add(&f)?);
    match f.pointwise_min_checked(&g)? {
        Some(m) => println!("min(f, 1/2) = {m}"),
        None => println!("min(f, 1/2) is not convex"),
    }

    let k = Polyhedron::cube(2, &int(1))?;
    let h = support_function(&k)?;
    println!("h_K = {h}");
    println!("h_K* is the indicator of K: {}", conjugate(&h)? == PolyConvexFunction::indicator(&k)?);
    Ok(())
}
