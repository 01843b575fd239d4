use num::{One, Zero};

use super::{ValCone, Valuation};
use crate::convex::{DcPair, PolyConvexFunction};
use crate::error::{check_dim, Error, Result};
use crate::scalar::Scalar;

fn require_homogeneity(z: &Valuation, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::EmptyInput);
    }
    if z.homogeneity != Some(k) {
        return Err(Error::InvalidArgument(format!(
            "needs a valuation homogeneous of degree {k}, got {:?}",
            z.homogeneity
        )));
    }
    Ok(())
}

fn factorial(k: usize) -> Scalar {
    (1..=k).map(|i| Scalar::from_integer((i as i64).into())).product()
}

fn sum_all(fs: &[&PolyConvexFunction]) -> Result<PolyConvexFunction> {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = acc.add(f)?;
    }
    Ok(acc)
}

/// `Z̄(f₁,…,f_k) = (1/k!) Σ_{∅≠S} (−1)^{k−|S|} Z(Σ_{i∈S} fᵢ)` for `Z` homogeneous of degree `k`.
pub fn polarize(z: &Valuation, fs: &[PolyConvexFunction]) -> Result<Vec<Scalar>> {
    let k = fs.len();
    require_homogeneity(z, k)?;
    for f in fs {
        check_dim(z.n, f.n())?;
        z.cone.membership(f).into_result()?;
    }
    let mut out = vec![Scalar::zero(); z.m];
    for mask in 1u32..(1 << k) {
        let chosen: Vec<&PolyConvexFunction> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| &fs[i]).collect();
        let v = z.evaluate(&sum_all(&chosen)?)?;
        let negative = (k - chosen.len()) % 2 == 1;
        for (o, x) in out.iter_mut().zip(v) {
            if negative {
                *o -= x;
            } else {
                *o += x;
            }
        }
    }
    let kf = factorial(k);
    Ok(out.into_iter().map(|x| x / &kf).collect())
}

/// Goodey–Weil pairing `GW(Z)[φ₁ ⊗ … ⊗ φ_k]` for DC test functions `φᵢ = gᵢ − hᵢ`.
///
/// With `fᵢ = hᵢ + I_𝒜`, the alternating sum over mixed polarizations
/// collapses by multi-additivity to `(1/k!) Σ_c (−1)^{#h} Z(Σᵢ cᵢ + I_𝒜)`
/// where each `cᵢ ∈ {gᵢ, hᵢ}`.
pub fn gw_evaluate(z: &Valuation, tests: &[DcPair]) -> Result<Vec<Scalar>> {
    let k = tests.len();
    require_homogeneity(z, k)?;
    let ValCone::Primal(cone) = &z.cone else {
        return Err(Error::InvalidArgument("Goodey-Weil pairing needs a primal cone".into()));
    };
    for t in tests {
        check_dim(z.n, t.n())?;
    }
    let anchor = if cone.a().is_whole_space() { None } else { Some(cone.indicator_a()?) };
    let mut out = vec![Scalar::zero(); z.m];
    for mask in 0u32..(1 << k) {
        let parts: Vec<&PolyConvexFunction> =
            tests.iter().enumerate().map(|(i, t)| if mask & (1 << i) != 0 { &t.h } else { &t.g }).collect();
        let mut f = sum_all(&parts)?;
        if let Some(ia) = &anchor {
            f = f.add(ia)?;
        }
        let v = z.evaluate(&f)?;
        let negative = mask.count_ones() % 2 == 1;
        for (o, x) in out.iter_mut().zip(v) {
            if negative {
                *o -= x;
            } else {
                *o += x;
            }
        }
    }
    let kf = factorial(k);
    if kf.is_one() {
        return Ok(out);
    }
    Ok(out.into_iter().map(|x| x / &kf).collect())
}
