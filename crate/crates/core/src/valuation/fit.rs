use std::collections::BTreeMap;

use num::{One, Zero};

use super::Valuation;
use crate::convex::{AffineForm, PolyConvexFunction};
use crate::error::{Error, Result};
use crate::geom::linalg::solve;
use crate::scalar::{frac_pow, Point, Scalar};

/// Polynomial in `nvars` variables of total degree `≤ d` with values in `ℝ^m`.
///
/// For [`affine_poly_fit`] the variables are `(y₁, …, yₙ, c)` of `ℓ = ⟨y,·⟩ + c`;
/// for [`epi_translation_fit`] they are `(x, t)` of the epi-translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePolynomial {
    pub nvars: usize,
    pub d: usize,
    pub m: usize,
    pub coeffs: BTreeMap<Vec<u32>, Vec<Scalar>>,
    /// Every tensor-grid coefficient of total degree above `d` vanished.
    pub high_degree_zero: bool,
    /// The fit reproduced the valuation exactly at every held-out node.
    pub held_out_exact: bool,
    pub held_out: Vec<Point>,
}

impl AffinePolynomial {
    pub fn eval(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.m];
        for (e, c) in &self.coeffs {
            let w: Scalar = v.iter().zip(e).map(|(x, &k)| frac_pow(x, k)).product();
            for (o, x) in out.iter_mut().zip(c) {
                *o += &w * x;
            }
        }
        out
    }

    /// Residual-free fit of the declared degree.
    pub fn is_exact(&self) -> bool {
        self.high_degree_zero && self.held_out_exact
    }

    /// Terms of total degree exactly `d`.
    pub fn top_part(&self) -> BTreeMap<Vec<u32>, Vec<Scalar>> {
        self.coeffs
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() as usize == self.d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }
}

fn inverse_vandermonde(d: usize) -> Result<Vec<Point>> {
    let size = d + 1;
    let v: Vec<Point> = (0..size)
        .map(|i| (0..size).map(|j| frac_pow(&Scalar::from_integer((i as i64).into()), j as u32)).collect())
        .collect();
    let id: Vec<Point> = (0..size)
        .map(|i| (0..size).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    solve(&v, &id).ok_or(Error::DuplicateNodes)
}

fn held_out_nodes(nvars: usize, d: usize) -> Vec<Point> {
    (0..5)
        .map(|i| {
            (0..nvars)
                .map(|j| {
                    let num = ((i + 2) * (j + 3) + d) % 7;
                    Scalar::new((num as i64 - 3).into(), ((i % 2 + 1) as i64).into())
                        + Scalar::new(((d + 1) as i64).into(), 3.into())
                })
                .collect()
        })
        .collect()
}

/// Tensor-grid interpolation of `eval` on `{0..d}^{nvars}` with held-out checks.
pub fn fit_polynomial<F>(nvars: usize, d: usize, m: usize, eval: F) -> Result<AffinePolynomial>
where
    F: Fn(&[Scalar]) -> Result<Vec<Scalar>>,
{
    let size = d + 1;
    let total = size.pow(nvars as u32);
    let index = |mut flat: usize| -> Vec<usize> {
        let mut idx = vec![0; nvars];
        for slot in idx.iter_mut() {
            *slot = flat % size;
            flat /= size;
        }
        idx
    };
    let mut values: Vec<Vec<Scalar>> = Vec::with_capacity(total);
    for flat in 0..total {
        let node: Point = index(flat).iter().map(|&i| Scalar::from_integer((i as i64).into())).collect();
        let v = eval(&node)?;
        if v.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: v.len() });
        }
        values.push(v);
    }
    let inv = inverse_vandermonde(d)?;
    let mut stride = 1;
    for _axis in 0..nvars {
        let mut next = vec![vec![Scalar::zero(); m]; total];
        for (flat, slot) in next.iter_mut().enumerate() {
            let e = (flat / stride) % size;
            let base = flat - e * stride;
            for i in 0..size {
                let w = &inv[e][i];
                if w.is_zero() {
                    continue;
                }
                for (o, x) in slot.iter_mut().zip(&values[base + i * stride]) {
                    *o += w * x;
                }
            }
        }
        values = next;
        stride *= size;
    }
    let mut coeffs = BTreeMap::new();
    let mut high_degree_zero = true;
    for (flat, c) in values.into_iter().enumerate() {
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        let e: Vec<u32> = index(flat).into_iter().map(|x| x as u32).collect();
        if e.iter().sum::<u32>() as usize > d {
            high_degree_zero = false;
        }
        coeffs.insert(e, c);
    }
    let mut poly = AffinePolynomial {
        nvars,
        d,
        m,
        coeffs,
        high_degree_zero,
        held_out_exact: true,
        held_out: held_out_nodes(nvars, d),
    };
    for node in poly.held_out.clone() {
        if eval(&node)? != poly.eval(&node) {
            poly.held_out_exact = false;
        }
    }
    Ok(poly)
}

/// `ℓ = (y, c) ↦ Z(f + ℓ)` as an exact polynomial of degree `≤ Z.d`.
pub fn affine_poly_fit(z: &Valuation, f: &PolyConvexFunction) -> Result<AffinePolynomial> {
    z.cone.membership(f).into_result()?;
    let n = z.n;
    fit_polynomial(n + 1, z.d, z.m, |v| {
        let l = AffineForm::new(v[..n].to_vec(), v[n].clone());
        z.evaluate(&f.add_affine(&l)?)
    })
}

/// `X = (x, t) ↦ Z(τ_X f)` as an exact polynomial of degree `≤ Z.d`.
pub fn epi_translation_fit(z: &Valuation, f: &PolyConvexFunction) -> Result<AffinePolynomial> {
    z.cone.membership(f).into_result()?;
    let n = z.n;
    fit_polynomial(n + 1, z.d, z.m, |v| z.evaluate(&f.epi_translate(&v[..n], &v[n])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::ConeSpec;
    use crate::geom::Polyhedron;
    use crate::scalar::{int, point};
    use crate::valuation::make_dirichlet;

    fn abs1() -> PolyConvexFunction {
        PolyConvexFunction::new(
            1,
            &[AffineForm::new(point(&[1]), int(0)), AffineForm::new(point(&[-1]), int(0))],
            None,
        )
        .unwrap()
    }

    #[test]
    fn dirichlet_fit() {
        let b = Polyhedron::cuboid(&[int(-1)], &[int(1)]).unwrap();
        let z = make_dirichlet(b, ConeSpec::with_o(Polyhedron::cube(1, &int(3)).unwrap()).unwrap()).unwrap();
        let p = affine_poly_fit(&z, &abs1()).unwrap();
        assert!(p.is_exact());
        let mut expected = BTreeMap::new();
        expected.insert(vec![0, 0], vec![int(2)]);
        expected.insert(vec![2, 0], vec![int(2)]);
        assert_eq!(p.coeffs, expected);
    }

    #[test]
    fn detects_excess_degree() {
        // a cubic claimed to have degree 2
        let p = fit_polynomial(1, 2, 1, |v| Ok(vec![&v[0] * &v[0] * &v[0]])).unwrap();
        assert!(!p.is_exact());
        let q = fit_polynomial(2, 2, 1, |v| Ok(vec![&v[0] * &v[1] + int(3)])).unwrap();
        assert!(q.is_exact());
        assert_eq!(q.eval(&[int(5), int(7)]), vec![int(38)]);
    }
}
