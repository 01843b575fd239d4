//! JSON encoding of every lab object. Scalars travel as `"p/q"` strings.

use serde_json::{json, Map, Value};

use crate::convex::{AffineForm, ConeSpec, DcPair, PolyConvexFunction};
use crate::error::{Error, Result};
use crate::geom::{Halfspace, HalfspaceSystem, Polyhedron};
use crate::hessian::{Atom, DensityCell, DensityIndex, DensityPoly, PiecewisePolyDensity, Theta0Atoms};
use crate::scalar::{format_scalar, parse_scalar, to_f64, Point, Scalar};
use crate::valuation::{
    dualize_valuation, extend_valuation, make_broken_max, make_dirichlet, make_top_degree, make_zero,
    AffinePolynomial, DecompositionResult, Kind, Probe, SupportReport, ValCone, Valuation, VerifyReport,
};

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| bad(format!("missing field {name:?}")))
}

pub fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("field {name:?} must be a nonnegative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

impl Json for Scalar {
    fn to_json(&self) -> Value {
        Value::String(format_scalar(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_scalar(s),
            Value::Number(n) => parse_scalar(&n.to_string()),
            _ => Err(bad("scalar must be a string \"p/q\" or a number")),
        }
    }
}

impl<T: Json> Json for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(Json::to_json).collect())
    }

    fn from_json(v: &Value) -> Result<Self> {
        array(v, "list")?.iter().map(T::from_json).collect()
    }
}

impl Json for Polyhedron {
    fn to_json(&self) -> Value {
        json!({
            "dim": self.dim(),
            "vertices": self.vertices().to_vec().to_json(),
            "rays": self.rays_with_lines().to_json(),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        if v.get("rows").is_some() {
            return Polyhedron::from_halfspaces(&HalfspaceSystem::from_json(v)?);
        }
        let dim = usize_field(v, "dim")?;
        let verts: Vec<Point> = Vec::from_json(field(v, "vertices")?)?;
        let rays: Vec<Point> = match v.get("rays") {
            Some(r) => Vec::from_json(r)?,
            None => Vec::new(),
        };
        let lines: Vec<Point> = match v.get("lines") {
            Some(r) => Vec::from_json(r)?,
            None => Vec::new(),
        };
        Polyhedron::from_generators_with_lines(dim, &verts, &rays, &lines)
    }
}

impl Json for HalfspaceSystem {
    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.rows.iter().map(|h| json!({"a": h.a.to_json(), "b": h.b.to_json()})).collect();
        json!({"dim": self.dim, "rows": rows})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dim = usize_field(v, "dim")?;
        let rows = array(field(v, "rows")?, "rows")?
            .iter()
            .map(|r| Ok(Halfspace::new(Vec::from_json(field(r, "a")?)?, Scalar::from_json(field(r, "b")?)?)))
            .collect::<Result<Vec<_>>>()?;
        HalfspaceSystem::new(dim, rows)
    }
}

impl Json for AffineForm {
    fn to_json(&self) -> Value {
        json!({"y": self.y.to_json(), "c": self.c.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(AffineForm::new(Vec::from_json(field(v, "y")?)?, Scalar::from_json(field(v, "c")?)?))
    }
}

fn set_or_all(p: &Polyhedron) -> Value {
    if p.is_whole_space() {
        Value::String("all".into())
    } else {
        p.to_json()
    }
}

fn set_or_all_from(v: &Value, n: usize) -> Result<Polyhedron> {
    match v {
        Value::String(s) if s == "all" => Ok(Polyhedron::whole(n)),
        Value::String(s) => Err(bad(format!("unknown set {s:?}"))),
        _ => Polyhedron::from_json(v),
    }
}

impl Json for PolyConvexFunction {
    fn to_json(&self) -> Value {
        json!({
            "n": self.n(),
            "pieces": self.pieces().to_vec().to_json(),
            "domain": set_or_all(self.domain()),
        })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = usize_field(v, "n")?;
        let pieces: Vec<AffineForm> = Vec::from_json(field(v, "pieces")?)?;
        let domain = match v.get("domain") {
            None => None,
            Some(d) => Some(set_or_all_from(d, n)?),
        };
        PolyConvexFunction::new(n, &pieces, domain.as_ref().filter(|d| !d.is_whole_space()))
    }
}

impl Json for ConeSpec {
    fn to_json(&self) -> Value {
        json!({"n": self.n(), "A": set_or_all(self.a()), "O": set_or_all(self.o())})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let dim_of = |key: &str| v.get(key).and_then(|p| p.get("dim")).and_then(Value::as_u64);
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .or_else(|| dim_of("A"))
            .or_else(|| dim_of("O"))
            .ok_or_else(|| bad("cone needs \"n\" when both sets are \"all\""))? as usize;
        let a = match v.get("A") {
            Some(a) => set_or_all_from(a, n)?,
            None => Polyhedron::whole(n),
        };
        let o = set_or_all_from(field(v, "O")?, n)?;
        ConeSpec::new(a, o)
    }
}

impl Json for DcPair {
    fn to_json(&self) -> Value {
        json!({"g": self.g.to_json(), "h": self.h.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        DcPair::new(PolyConvexFunction::from_json(field(v, "g")?)?, PolyConvexFunction::from_json(field(v, "h")?)?)
    }
}

fn exps(v: &Value, what: &str) -> Result<Vec<u32>> {
    array(v, what)?
        .iter()
        .map(|e| e.as_u64().map(|x| x as u32).ok_or_else(|| bad(format!("{what} must hold nonnegative integers"))))
        .collect()
}

impl Json for PiecewisePolyDensity {
    fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells()
            .iter()
            .map(|c| {
                let terms: Vec<Value> = c
                    .poly
                    .iter()
                    .map(|(k, val)| json!({"x": k.x, "ys": k.ys, "value": val.to_json()}))
                    .collect();
                json!({"cell": c.cell.to_json(), "terms": terms})
            })
            .collect();
        json!({"n": self.n(), "m": self.m(), "cells": cells})
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = usize_field(v, "n")?;
        let m = usize_field(v, "m")?;
        let mut cells = Vec::new();
        for c in array(field(v, "cells")?, "cells")? {
            let cell = Polyhedron::from_json(field(c, "cell")?)?;
            let mut poly = DensityPoly::new();
            for t in array(field(c, "terms")?, "terms")? {
                let key = DensityIndex { x: exps(field(t, "x")?, "x")?, ys: exps(field(t, "ys")?, "ys")? };
                poly.insert(key, Vec::from_json(field(t, "value")?)?);
            }
            cells.push(DensityCell { cell, poly });
        }
        PiecewisePolyDensity::new(n, m, cells)
    }
}

impl Json for Theta0Atoms {
    fn to_json(&self) -> Value {
        let atoms: Vec<Value> = self
            .atoms
            .iter()
            .map(|a| json!({"x": a.x.to_json(), "S": a.s.to_json(), "fx": a.fx.to_json()}))
            .collect();
        let mut out = json!({"atoms": atoms});
        if let Ok(m) = self.mass() {
            out["mass"] = m.to_json();
        }
        out
    }

    fn from_json(v: &Value) -> Result<Self> {
        let atoms = array(field(v, "atoms")?, "atoms")?
            .iter()
            .map(|a| {
                Ok(Atom {
                    x: Vec::from_json(field(a, "x")?)?,
                    s: Polyhedron::from_json(field(a, "S")?)?,
                    fx: Scalar::from_json(field(a, "fx")?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Theta0Atoms { atoms })
    }
}

fn cone_json(c: &ValCone) -> Value {
    match c {
        ValCone::Primal(p) => p.to_json(),
        ValCone::Dual { primal, .. } => {
            let mut v = primal.to_json();
            v["dual"] = Value::Bool(true);
            v
        }
    }
}

impl Json for Valuation {
    fn to_json(&self) -> Value {
        let params = match &self.kind {
            Kind::TopDegree { phi } => json!({"phi": phi.to_json()}),
            Kind::Dirichlet { b } => json!({"B": b.to_json()}),
            Kind::Dualized { inner } => json!({"inner": inner.to_json()}),
            Kind::Extended { inner, a, eps } => json!({"inner": inner.to_json(), "A": a.to_json(), "eps": eps.to_json()}),
            Kind::Component { inner, k, nodes } => json!({"inner": inner.to_json(), "k": k, "nodes": nodes.to_json()}),
            Kind::BrokenMax { points } => json!({"points": points.to_json()}),
            Kind::Zero => json!({}),
        };
        let mut v = json!({
            "kind": self.kind.name(),
            "params": params,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "cone": cone_json(&self.cone),
        });
        if let Some(k) = self.homogeneity {
            v["homogeneity"] = json!(k);
        }
        v
    }

    fn from_json(v: &Value) -> Result<Self> {
        let kind = field(v, "kind")?.as_str().ok_or_else(|| bad("kind must be a string"))?;
        let empty = json!({});
        let params = v.get("params").unwrap_or(&empty);
        let cone = || -> Result<ConeSpec> {
            let mut c = field(v, "cone")?.clone();
            if c.get("n").is_none() {
                if let Some(n) = v.get("n") {
                    c["n"] = n.clone();
                }
            }
            ConeSpec::from_json(&c)
        };
        let inner = || Valuation::from_json(field(params, "inner")?);
        let z = match kind {
            "top_degree" => make_top_degree(PiecewisePolyDensity::from_json(field(params, "phi")?)?, cone()?)?,
            "dirichlet" => make_dirichlet(Polyhedron::from_json(field(params, "B")?)?, cone()?)?,
            "dualized" => dualize_valuation(&inner()?)?,
            "extended" => extend_valuation(
                &inner()?,
                &Polyhedron::from_json(field(params, "A")?)?,
                cone()?,
                &Scalar::from_json(field(params, "eps")?)?,
            )?,
            "component" => {
                let mut z = inner()?.component(usize_field(params, "k")?);
                if let (Some(ns), Kind::Component { nodes, .. }) = (params.get("nodes"), &mut z.kind) {
                    *nodes = Vec::from_json(ns)?;
                }
                z
            }
            "broken_max" => make_broken_max(Vec::from_json(field(params, "points")?)?)?,
            "zero" => make_zero(cone()?, v.get("m").and_then(Value::as_u64).unwrap_or(1) as usize),
            other => return Err(bad(format!("unknown valuation kind {other:?}"))),
        };
        if let Some(n) = v.get("n").and_then(Value::as_u64) {
            if n as usize != z.n {
                return Err(Error::DimensionMismatch { expected: z.n, got: n as usize });
            }
        }
        Ok(z)
    }
}

impl Json for Probe {
    fn to_json(&self) -> Value {
        json!({"center": self.center.to_json(), "delta": self.delta.to_json()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Probe::new(Vec::from_json(field(v, "center")?)?, Scalar::from_json(field(v, "delta")?)?))
    }
}

pub fn decomposition_json(r: &DecompositionResult) -> Value {
    let comps: Vec<Value> =
        r.components.iter().enumerate().map(|(k, c)| json!({"k": k, "value": c.to_json()})).collect();
    json!({
        "components": comps,
        "nodes": r.nodes.to_json(),
        "exact": r.exact,
        "top_slot_zero": r.top_slot_zero,
        "sum": r.sum().to_json(),
    })
}

pub fn polynomial_json(p: &AffinePolynomial) -> Value {
    let coeffs: Vec<Value> = p.coeffs.iter().map(|(e, c)| json!({"exponents": e, "value": c.to_json()})).collect();
    json!({
        "nvars": p.nvars,
        "d": p.d,
        "m": p.m,
        "coeffs": coeffs,
        "high_degree_zero": p.high_degree_zero,
        "held_out_exact": p.held_out_exact,
        "exact": p.is_exact(),
    })
}

pub fn support_report_json(r: &SupportReport) -> Value {
    let certs: Vec<Value> = r
        .certificates
        .iter()
        .map(|c| json!({"probe": c.probe, "k": c.k, "value": c.value.to_json()}))
        .collect();
    json!({
        "flagged": r.flagged.iter().map(Json::to_json).collect::<Vec<_>>(),
        "certificates": certs,
        "label": r.label,
    })
}

pub fn verify_report_json(r: &VerifyReport) -> Value {
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "trial": v.trial,
                "reproducer": {"f": v.f.to_json(), "h": v.h.to_json()},
                "lhs": v.lhs.to_json(),
                "rhs": v.rhs.to_json(),
            })
        })
        .collect();
    json!({"trials": r.trials, "checked": r.checked, "violations": violations, "passed": r.passed()})
}

/// Rewrites every rational string as a float and marks the document.
pub fn to_float_mode(v: Value) -> Value {
    fn walk(v: Value) -> Value {
        match v {
            Value::String(s) => match parse_scalar(&s) {
                Ok(x) if s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-') => json!(to_f64(&x)),
                _ => Value::String(s),
            },
            Value::Array(a) => Value::Array(a.into_iter().map(walk).collect()),
            Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, walk(v))).collect::<Map<_, _>>()),
            other => other,
        }
    }
    match walk(v) {
        Value::Object(mut o) => {
            o.insert("mode".into(), Value::String("float".into()));
            Value::Object(o)
        }
        other => json!({"mode": "float", "value": other}),
    }
}

pub fn parse_str<T: Json>(s: &str) -> Result<T> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    T::from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, point};

    #[test]
    fn function_round_trip() {
        let f: PolyConvexFunction =
            parse_str(r#"{"n":1,"pieces":[{"y":["1"],"c":"0"},{"y":["-1"],"c":"0"}],"domain":"all"}"#).unwrap();
        assert_eq!(f.eval_finite(&[int(-3)]).unwrap(), int(3));
        assert_eq!(PolyConvexFunction::from_json(&f.to_json()).unwrap(), f);
        let g = PolyConvexFunction::indicator_of(&crate::geom::convex_hull(&[point(&[1, 2])]).unwrap()).unwrap();
        assert_eq!(PolyConvexFunction::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn polyhedron_forms() {
        let p: Polyhedron = parse_str(r#"{"dim":1,"rows":[{"a":["1"],"b":"1"},{"a":["-1"],"b":"1/2"}]}"#).unwrap();
        assert_eq!(p, Polyhedron::cuboid(&[frac(-1, 2)], &[int(1)]).unwrap());
        let h = Polyhedron::whole(2);
        assert_eq!(Polyhedron::from_json(&h.to_json()).unwrap(), h);
        let e = Polyhedron::empty(2);
        assert_eq!(Polyhedron::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn float_mode_marks_output() {
        let v = to_float_mode(json!({"x": "1/4", "kind": "all"}));
        assert_eq!(v["x"], json!(0.25));
        assert_eq!(v["kind"], json!("all"));
        assert_eq!(v["mode"], json!("float"));
    }

    #[test]
    fn malformed_is_parse_error() {
        assert!(matches!(parse_str::<PolyConvexFunction>("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_str::<Scalar>("\"1/0\""), Err(Error::Parse(_))));
    }
}
