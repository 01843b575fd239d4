//! Triangulation, volume and exact integration of polynomials over polytopes.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};

use super::linalg::{affine_dim, det};
use super::polyhedron::Polyhedron;
use crate::error::{Error, Result};
use crate::scalar::{sub, Point, Scalar};

/// Sparse polynomial: exponent vector to coefficient.
pub type Poly = BTreeMap<Vec<u32>, Scalar>;

fn facet_sets(p: &Polyhedron) -> Vec<Vec<usize>> {
    p.hrep().ineqs.iter().map(|h| p.tight_vertices(h)).collect()
}

fn subset_dim(points: &[Point], idx: &[usize]) -> usize {
    let pts: Vec<Point> = idx.iter().map(|&i| points[i].clone()).collect();
    affine_dim(&pts).unwrap_or(0)
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn pull(points: &[Point], facets: &[Vec<usize>], face: &[usize], dim: usize, out: &mut Vec<Vec<usize>>) {
    if face.len() == dim + 1 {
        out.push(face.to_vec());
        return;
    }
    let apex = face[0];
    let mut subs: Vec<Vec<usize>> = Vec::new();
    for g in facets {
        let s = intersect_sorted(face, g);
        if s.len() < dim || s.contains(&apex) || subs.contains(&s) {
            continue;
        }
        if subset_dim(points, &s) == dim - 1 {
            subs.push(s);
        }
    }
    for s in subs {
        let mut inner = Vec::new();
        pull(points, facets, &s, dim - 1, &mut inner);
        for mut simplex in inner {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
}

/// Pulling triangulation of a full-dimensional polytope from its
/// lexicographically smallest vertex, recursively over facets.
/// Lower-dimensional input yields no simplices.
pub fn triangulate(p: &Polyhedron) -> Result<Vec<Vec<Point>>> {
    if !p.is_bounded() {
        return Err(Error::NotPolytope);
    }
    if !p.is_full_dim() {
        return Ok(Vec::new());
    }
    let pts = p.vertices();
    let dim = p.dim();
    if dim == 0 {
        return Ok(vec![vec![pts[0].clone()]]);
    }
    let mut facets = facet_sets(p);
    for f in facets.iter_mut() {
        f.sort_unstable();
    }
    let all: Vec<usize> = (0..pts.len()).collect();
    let mut simplices = Vec::new();
    pull(pts, &facets, &all, dim, &mut simplices);
    Ok(simplices
        .into_iter()
        .map(|s| s.into_iter().map(|i| pts[i].clone()).collect())
        .collect())
}

fn factorial(n: u32) -> Scalar {
    Scalar::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

fn simplex_volume(s: &[Point]) -> Scalar {
    let d = s.len() - 1;
    if d == 0 {
        return Scalar::one();
    }
    let m: Vec<Point> = s[1..].iter().map(|v| sub(v, &s[0])).collect();
    det(&m).abs() / factorial(d as u32)
}

/// Lebesgue measure in the ambient dimension; zero for lower-dimensional sets.
pub fn volume(p: &Polyhedron) -> Result<Scalar> {
    if p.is_empty() {
        return Ok(Scalar::zero());
    }
    Ok(triangulate(p)?.iter().map(|s| simplex_volume(s)).sum())
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Scalar::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn integrate_over_simplex(s: &[Point], poly: &Poly) -> Scalar {
    let d = s.len() - 1;
    let vol = simplex_volume(s);
    // x_j = Σ_i λ_i s[i][j]; expand each monomial in barycentric coordinates
    let coord_polys: Vec<Poly> = (0..d)
        .map(|j| {
            let mut p = Poly::new();
            for (i, v) in s.iter().enumerate() {
                if !v[j].is_zero() {
                    let mut e = vec![0u32; d + 1];
                    e[i] = 1;
                    p.insert(e, v[j].clone());
                }
            }
            p
        })
        .collect();
    let mut unit = Poly::new();
    unit.insert(vec![0u32; d + 1], Scalar::one());
    let mut total = Scalar::zero();
    for (alpha, coef) in poly {
        let mut expanded = unit.clone();
        for (j, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                expanded = mul(&expanded, &coord_polys[j]);
            }
        }
        let mut acc = Scalar::zero();
        for (k, c) in &expanded {
            let num: Scalar = k.iter().map(|&ki| factorial(ki)).product();
            let deg: u32 = k.iter().sum();
            acc += c * num * factorial(d as u32) / factorial(d as u32 + deg);
        }
        total += coef * acc * &vol;
    }
    total
}

/// Exact `∫_P Σ c_α x^α dx` over a polytope.
pub fn integrate_polynomial(p: &Polyhedron, poly: &Poly) -> Result<Scalar> {
    for alpha in poly.keys() {
        crate::error::check_dim(p.dim(), alpha.len())?;
    }
    if p.is_empty() {
        return Ok(Scalar::zero());
    }
    Ok(triangulate(p)?
        .iter()
        .map(|s| integrate_over_simplex(s, poly))
        .sum())
}

/// Exact `∫_P x^α dx`.
pub fn integrate_monomial(p: &Polyhedron, alpha: &[u32]) -> Result<Scalar> {
    let mut poly = Poly::new();
    poly.insert(alpha.to_vec(), Scalar::one());
    integrate_polynomial(p, &poly)
}

/// All nonempty faces of a polytope as sorted vertex index sets, including `P` itself.
pub fn face_sets(p: &Polyhedron) -> Vec<Vec<usize>> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut facets = facet_sets(p);
    for f in facets.iter_mut() {
        f.sort_unstable();
    }
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    let mut faces = vec![all];
    let mut i = 0;
    while i < faces.len() {
        let cur = faces[i].clone();
        for g in &facets {
            let s = intersect_sorted(&cur, g);
            if !s.is_empty() && !faces.contains(&s) {
                faces.push(s);
            }
        }
        i += 1;
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::polyhedron::convex_hull;
    use crate::scalar::{frac, int, point};

    #[test]
    fn square_volume() {
        let sq = Polyhedron::cube(2, &int(1)).unwrap();
        assert_eq!(volume(&sq).unwrap(), int(4));
    }

    #[test]
    fn cross_polytope() {
        let p = convex_hull(&[point(&[1, 0]), point(&[-1, 0]), point(&[0, 1]), point(&[0, -1])]).unwrap();
        assert_eq!(volume(&p).unwrap(), int(2));
        let oct = convex_hull(&[
            point(&[1, 0, 0]),
            point(&[-1, 0, 0]),
            point(&[0, 1, 0]),
            point(&[0, -1, 0]),
            point(&[0, 0, 1]),
            point(&[0, 0, -1]),
        ])
        .unwrap();
        assert_eq!(volume(&oct).unwrap(), frac(4, 3));
    }

    #[test]
    fn degenerate_and_unbounded() {
        let seg = convex_hull(&[point(&[0, 0]), point(&[1, 1])]).unwrap();
        assert_eq!(volume(&seg).unwrap(), int(0));
        let ray = Polyhedron::from_generators(1, &[point(&[0])], &[point(&[1])]).unwrap();
        assert_eq!(volume(&ray), Err(Error::NotPolytope));
    }

    #[test]
    fn monomials() {
        let unit = Polyhedron::cuboid(&[int(0)], &[int(1)]).unwrap();
        assert_eq!(integrate_monomial(&unit, &[1]).unwrap(), frac(1, 2));
        let sq = Polyhedron::cube(2, &int(1)).unwrap();
        assert_eq!(integrate_monomial(&sq, &[1, 1]).unwrap(), int(0));
        assert_eq!(integrate_monomial(&sq, &[2, 0]).unwrap(), frac(4, 3));
        let tri = convex_hull(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1])]).unwrap();
        assert_eq!(integrate_monomial(&tri, &[1, 0]).unwrap(), frac(1, 6));
    }

    #[test]
    fn face_lattice_of_square() {
        let sq = Polyhedron::cube(2, &int(1)).unwrap();
        // P, 4 edges, 4 vertices
        assert_eq!(face_sets(&sq).len(), 9);
    }
}
