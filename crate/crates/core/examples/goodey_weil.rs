//! Polarization, the Goodey-Weil pairing on bumps, and support estimation.

use cvlab::convex::{AffineForm, DcPair, PolyConvexFunction};
use cvlab::geom::Polyhedron;
use cvlab::hessian::{dc_decompose_catalog, Shape};
use cvlab::scalar::{format_scalar, frac, int, point, Pt};
use cvlab::suite::{default_cone, tent_density};
use cvlab::valuation::{gw_evaluate, make_dirichlet, make_top_degree, polarize, support_estimate, Probe};

fn bump(c: cvlab::Scalar, delta: cvlab::Scalar) -> cvlab::Result<DcPair> {
    let (g, h) = dc_decompose_catalog(&Shape::hinge(vec![c], delta)?)?;
    DcPair::new(g, h)
}

fn main() -> cvlab::Result<()> {
    let dir = make_dirichlet(Polyhedron::cube(1, &int(1))?, default_cone(1)?)?;
    let f = PolyConvexFunction::new(1, &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[-1]), int(0))], None)?;
    let g = PolyConvexFunction::new(1, &[AffineForm::new(point(&[2]), int(-1)), AffineForm::new(point(&[0]), int(0))], None)?;
    println!("polarization Z(f, g) = {}", format_scalar(&polarize(&dir, &[f, g])?[0]));

    for (a, b) in [(0, 0), (0, 1), (0, 4)] {
        let p = bump(frac(a, 8), frac(1, 8))?;
        let q = bump(frac(b, 8), frac(1, 8))?;
        println!("GW(bump at {}/8, bump at {}/8) = {}", a, b, format_scalar(&gw_evaluate(&dir, &[p, q])?[0]));
    }

    // pairing against single bumps sees the kinks of the tent density at -1, 0, 1
    let tent = make_top_degree(tent_density()?, default_cone(1)?)?;
    let probes: Vec<Probe> = (-4..=4).map(|i| Probe::new(vec![frac(i, 2)], frac(1, 4))).collect();
    let report = support_estimate(&tent, &probes)?;
    println!("{}:", report.label);
    for p in &report.flagged {
        println!("  flagged probe at {}", Pt(&p.center));
    }
    Ok(())
}
