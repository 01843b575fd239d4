//! Operations on the conjugate side: infimal convolution, epi-multiplication,
//! lifts and floors of bodies, and epi-distance.

use cvlab::convex::{conjugate, floor_body, lift_ha, AffineForm, PolyConvexFunction};
use cvlab::dual::{epi_distance, epi_mult, inf_conv};
use cvlab::geom::Polyhedron;
use cvlab::scalar::{frac, int, point};

fn main() -> cvlab::Result<()> {
    let abs = PolyConvexFunction::new(
        1,
        &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[-1]), int(0))],
        None,
    )?;
    let box1 = PolyConvexFunction::indicator(&Polyhedron::cube(1, &int(1))?)?;

    // |x| inf-conv I_[-1,1] is the distance to [-1,1]
    let d = inf_conv(&abs, &box1)?;
    println!("|x| # I = {d}");
    println!("(f # g)* = f* + g*: {}", conjugate(&d)? == conjugate(&abs)?.add(&conjugate(&box1)?)?);

    let half = epi_mult(&abs, &frac(1, 2))?;
    println!("1/2 . |x| = {half}");
    println!("(1/2 f)* = 1/2 . f*: {}", conjugate(&abs.scale(&frac(1, 2))?)? == epi_mult(&conjugate(&abs)?, &frac(1, 2))?);

    let k = Polyhedron::cuboid(&[int(-1), int(0)], &[int(1), int(2)])?;
    let a = Polyhedron::cube(1, &int(1))?;
    println!("lift of K over A = {}", lift_ha(&k, &a)?);
    println!("floor of K = {}", floor_body(&k)?);

    let shifted = abs.add_affine(&AffineForm::new(point(&[0]), frac(1, 4)))?;
    println!("epi-distance(|x|, |x| + 1/4) on a radius 4 window: {:.4}", epi_distance(&abs, &shifted, &int(4))?);
    Ok(())
}
