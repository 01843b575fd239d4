//! Building valuations, evaluating them, and splitting them into homogeneous parts.

use cvlab::convex::{AffineForm, PolyConvexFunction};
use cvlab::geom::Polyhedron;
use cvlab::scalar::{format_scalar, frac, int, point};
use cvlab::suite::{default_cone, sample_density};
use cvlab::valuation::{affine_poly_fit, decompose_homogeneous, epi_translation_fit, make_dirichlet, make_top_degree};

fn show(v: &[cvlab::Scalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(", ")
}

fn main() -> cvlab::Result<()> {
    let cone = default_cone(1)?;
    let abs = PolyConvexFunction::new(
        1,
        &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[-1]), int(0))],
        None,
    )?;

    // Dirichlet energy of the slope over [-1, 1]
    let dir = make_dirichlet(Polyhedron::cube(1, &int(1))?, cone.clone())?;
    println!("{}: Z(|x|) = [{}]", dir.kind.name(), show(&dir.evaluate(&abs)?));

    let r = decompose_homogeneous(&dir, &abs, None)?;
    for (k, c) in r.components.iter().enumerate() {
        println!("  Z_{k}(|x|) = [{}]", show(c));
    }
    println!("  top slot vanishes: {}", r.top_slot_zero);

    let fit = affine_poly_fit(&dir, &abs)?;
    println!("Z(|x| + y x + c) as a polynomial in (y, c), exact = {}", fit.is_exact());
    for (exps, c) in &fit.coeffs {
        if c.iter().any(|x| *x != int(0)) {
            println!("  {:?}: [{}]", exps, show(c));
        }
    }
    let epi = epi_translation_fit(&dir, &abs)?;
    println!("under epi-translation the degree is {}", epi.coeffs.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0));

    // integrate a density against the Monge-Ampere measure
    let top = make_top_degree(sample_density(1, 1)?, cone)?;
    let tilted = abs.add_affine(&AffineForm::new(point(&[0]), frac(1, 2)))?;
    println!("{}: Z(|x| + 1/2) = [{}], homogeneity {:?}", top.kind.name(), show(&top.evaluate(&tilted)?), top.homogeneity);
    Ok(())
}
