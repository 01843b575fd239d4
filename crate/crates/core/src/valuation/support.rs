use num::Zero;

use super::{gw_evaluate, ValCone, Valuation};
use crate::convex::DcPair;
use crate::error::{check_dim, Error, Result};
use crate::geom::Polyhedron;
use crate::hessian::{dc_decompose_catalog, Shape};
use crate::scalar::{Point, Scalar};

/// Hinge bump of radius `delta` centred at `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub center: Point,
    pub delta: Scalar,
}

impl Probe {
    pub fn new(center: Point, delta: Scalar) -> Self {
        Probe { center, delta }
    }

    pub fn shape(&self) -> Result<Shape> {
        Shape::hinge(self.center.clone(), self.delta.clone())
    }

    pub fn cell(&self) -> Result<Polyhedron> {
        self.shape()?.support()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub probe: usize,
    pub k: usize,
    pub value: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub flagged: Vec<Probe>,
    pub certificates: Vec<Certificate>,
    pub label: String,
}

impl SupportReport {
    /// Union of the flagged probe cells' hull, or `None` when nothing was flagged.
    pub fn region(&self) -> Result<Option<Polyhedron>> {
        let mut pts = Vec::new();
        for p in &self.flagged {
            pts.extend(p.cell()?.vertices().iter().cloned());
        }
        if pts.is_empty() {
            return Ok(None);
        }
        Ok(Some(crate::geom::convex_hull(&pts)?))
    }
}

/// Flags the probes where some homogeneous component pairs nontrivially with the bump.
pub fn support_estimate(z: &Valuation, probes: &[Probe]) -> Result<SupportReport> {
    let ValCone::Primal(cone) = &z.cone else {
        return Err(Error::InvalidArgument("support estimation needs a primal cone".into()));
    };
    for p in probes {
        check_dim(z.n, p.center.len())?;
        if !cone.o().contains_in_interior_polytope(&p.cell()?) {
            return Err(Error::SupportEscapes(format!("probe cell around {:?} leaves int O", p.center)));
        }
    }
    let components: Vec<(usize, Valuation)> = match z.homogeneity {
        Some(k) if k >= 1 => vec![(k, z.clone())],
        Some(_) => Vec::new(),
        None => (1..=z.n + z.d).map(|k| (k, z.component(k))).collect(),
    };
    let mut flagged = Vec::new();
    let mut certificates = Vec::new();
    for (i, p) in probes.iter().enumerate() {
        let (g, h) = dc_decompose_catalog(&p.shape()?)?;
        let pair = DcPair::new(g, h)?;
        let mut hit = false;
        for (k, zk) in &components {
            let value = gw_evaluate(zk, &vec![pair.clone(); *k])?;
            if value.iter().any(|v| !v.is_zero()) {
                hit = true;
                certificates.push(Certificate { probe: i, k: *k, value });
            }
        }
        if hit {
            flagged.push(p.clone());
        }
    }
    let delta = probes.first().map(|p| crate::scalar::format_scalar(&p.delta)).unwrap_or_default();
    Ok(SupportReport { flagged, certificates, label: format!("lower bound on support at resolution {delta}") })
}
