//! Subdifferentials and the discrete Monge-Ampere measure of a PL function.

use cvlab::convex::{AffineForm, PolyConvexFunction};
use cvlab::geom::Polyhedron;
use cvlab::hessian::{integrate_atoms, subdifferential, theta0, PiecewisePolyDensity};
use cvlab::scalar::{format_scalar, int, point, Pt};

fn main() -> cvlab::Result<()> {
    // max(0, x, y): a single vertex at the origin carrying a triangle of slopes
    let f = PolyConvexFunction::new(
        2,
        &[
            AffineForm::new(point(&[0, 0]), int(0)),
            AffineForm::new(point(&[1, 0]), int(0)),
            AffineForm::new(point(&[0, 1]), int(0)),
        ],
        None,
    )?;
    let s = subdifferential(&f, &point(&[0, 0]))?;
    println!("subdifferential at the origin has vertices:");
    for v in s.vertices() {
        println!("  {}", Pt(v));
    }
    let s = subdifferential(&f, &point(&[1, -1]))?;
    println!("at (1, -1) it is {} dimensional", s.affine_dim().unwrap_or(0));

    let region = Polyhedron::cube(2, &int(2))?;
    let atoms = theta0(&f, &region)?;
    for a in &atoms.atoms {
        println!("atom at {}  f = {}  mass = {}", Pt(&a.x), format_scalar(&a.fx), format_scalar(&cvlab::geom::integrate::volume(&a.s)?));
    }
    println!("total mass = {}", format_scalar(&atoms.mass()?));

    let phi = PiecewisePolyDensity::constant(region, vec![int(3)])?;
    let total = integrate_atoms(&atoms, &phi)?;
    println!("integral of the constant 3 = {}", format_scalar(&total[0]));
    Ok(())
}
