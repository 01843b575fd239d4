//! Seeded generators of small rational test objects.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::convex::{AffineForm, PolyConvexFunction};
use crate::error::Result;
use crate::geom::{convex_hull, Polyhedron};
use crate::scalar::{Point, Scalar};

pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ max_num`, `1 ≤ q ≤ max_den`.
pub fn small_rational(rng: &mut Gen, max_num: i64, max_den: i64) -> Scalar {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    Scalar::new(p.into(), q.into())
}

pub fn small_int(rng: &mut Gen, r: i64) -> Scalar {
    Scalar::from_integer(rng.gen_range(-r..=r).into())
}

pub fn small_point(rng: &mut Gen, dim: usize, max_num: i64, max_den: i64) -> Point {
    (0..dim).map(|_| small_rational(rng, max_num, max_den)).collect()
}

/// A full-dimensional polytope: the hull of `count` random points in `[−r, r]^dim` (half-integers).
pub fn random_polytope(rng: &mut Gen, dim: usize, count: usize, r: i64) -> Result<Polyhedron> {
    loop {
        let pts: Vec<Point> = (0..count.max(dim + 1)).map(|_| small_point(rng, dim, 2 * r, 2)).collect();
        let p = convex_hull(&pts)?;
        if p.is_full_dim() {
            return Ok(p);
        }
    }
}

/// Max of `pieces` random affine functions with finite values everywhere.
pub fn random_pl(rng: &mut Gen, n: usize, pieces: usize) -> Result<PolyConvexFunction> {
    let forms: Vec<AffineForm> =
        (0..pieces.max(1)).map(|_| AffineForm::new(small_point(rng, n, 3, 2), small_rational(rng, 3, 2))).collect();
    PolyConvexFunction::new(n, &forms, None)
}

/// Like [`random_pl`], restricted half the time to a random box or polytope domain.
pub fn random_pl_any_domain(rng: &mut Gen, n: usize, pieces: usize) -> Result<PolyConvexFunction> {
    let f = random_pl(rng, n, pieces)?;
    match rng.gen_range(0..3) {
        0 => Ok(f),
        1 => {
            let lo: Point = (0..n).map(|_| Scalar::from_integer(rng.gen_range(-3..=0).into())).collect();
            let hi: Point = lo.iter().map(|x| x + Scalar::from_integer(rng.gen_range(1..=3).into())).collect();
            f.add(&PolyConvexFunction::indicator(&Polyhedron::cuboid(&lo, &hi)?)?)
        }
        _ => f.add(&PolyConvexFunction::indicator(&random_polytope(rng, n, n + 3, 2)?)?),
    }
}
