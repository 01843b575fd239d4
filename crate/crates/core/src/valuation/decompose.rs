use num::{One, Signed, Zero};

use super::Valuation;
use crate::convex::PolyConvexFunction;
use crate::error::{Error, Result};
use crate::geom::linalg::solve;
use crate::scalar::{frac_pow, Point, Scalar};

/// Components `Z_k(f)`, `k = 0..=n+1+d`, of `Z(t f) = Σ tᵏ Z_k(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub components: Vec<Vec<Scalar>>,
    pub nodes: Vec<Scalar>,
    /// Solved exactly over the rationals.
    pub exact: bool,
    /// Slot `n+1+d` vanished.
    pub top_slot_zero: bool,
}

impl DecompositionResult {
    pub fn sum(&self) -> Vec<Scalar> {
        let m = self.components.first().map_or(0, Vec::len);
        let mut out = vec![Scalar::zero(); m];
        for c in &self.components {
            for (o, v) in out.iter_mut().zip(c) {
                *o += v;
            }
        }
        out
    }
}

/// `t_j = j + 1`.
pub fn default_nodes(count: usize) -> Vec<Scalar> {
    (1..=count).map(|j| Scalar::from_integer((j as i64).into())).collect()
}

/// Evaluates `Z(t_j f)` at `n+d+2` nodes and inverts the Vandermonde system.
pub fn decompose_homogeneous(
    z: &Valuation,
    f: &PolyConvexFunction,
    nodes: Option<&[Scalar]>,
) -> Result<DecompositionResult> {
    let count = z.n + z.d + 2;
    let nodes: Vec<Scalar> = match nodes {
        Some(ns) => ns.to_vec(),
        None => default_nodes(count),
    };
    if nodes.len() != count {
        return Err(Error::InvalidArgument(format!("expected {count} nodes, got {}", nodes.len())));
    }
    if nodes.iter().any(|t| !t.is_positive()) {
        return Err(Error::InvalidArgument("nodes must be positive".into()));
    }
    for (i, a) in nodes.iter().enumerate() {
        if nodes[i + 1..].contains(a) {
            return Err(Error::DuplicateNodes);
        }
    }
    let mut rhs: Vec<Point> = Vec::with_capacity(count);
    for t in &nodes {
        let g = if t.is_one() { f.clone() } else { f.scale(t)? };
        rhs.push(z.evaluate(&g)?);
    }
    let vander: Vec<Point> = nodes.iter().map(|t| (0..count).map(|k| frac_pow(t, k as u32)).collect()).collect();
    let components = solve(&vander, &rhs).ok_or(Error::DuplicateNodes)?;
    let top_slot_zero = components[count - 1].iter().all(Zero::is_zero);
    Ok(DecompositionResult { components, nodes, exact: true, top_slot_zero })
}
