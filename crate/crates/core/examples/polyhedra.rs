//! Exact polyhedra: hulls, facets, Minkowski sums and volumes.

use cvlab::geom::integrate::volume;
use cvlab::geom::{convex_hull, Polyhedron};
use cvlab::scalar::{format_scalar, frac, int, point, Pt};

fn main() -> cvlab::Result<()> {
    let tri = convex_hull(&[point(&[0, 0]), point(&[2, 0]), point(&[0, 2]), point(&[1, 1]) /* redundant */])?;
    println!("triangle vertices:");
    for v in tri.vertices() {
        println!("  {}", Pt(v));
    }
    println!("facets:");
    for h in &tri.hrep().ineqs {
        println!("  {} . x <= {}", Pt(&h.a), format_scalar(&h.b));
    }

    let square = Polyhedron::cube(2, &frac(1, 2))?;
    let sum = tri.minkowski_sum(&square)?;
    println!("vol(T) = {}", format_scalar(&volume(&tri)?));
    println!("vol(T + Q) = {}", format_scalar(&volume(&sum)?));

    let cut = sum.intersect_polyhedron(&Polyhedron::cuboid(&[int(-10), int(-10)], &[int(1), int(10)])?)?;
    println!("after cutting at x <= 1: {} vertices, volume {}", cut.vertices().len(), format_scalar(&volume(&cut)?));

    let quadrant = Polyhedron::from_generators(2, &[point(&[0, 0])], &[point(&[1, 0]), point(&[0, 1])])?;
    println!("quadrant bounded? {}  rays: {}", quadrant.is_bounded(), quadrant.rays().len());
    Ok(())
}
