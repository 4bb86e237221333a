//! JSON (de)serialization for densities, simplices, and polytopes.
//!
//! Density schema:
//! ```json
//! {"type":"piecewise_loglinear","knots":[...],"logvals":[...],
//!  "left_slope":1.0,"right_slope":-1.0}
//! {"type":"polyhedral","dim":2,"pieces":[{"a":[0.0,0.0],"b":0.0}],
//!  "domain":{"box":{"lo":[-1,-1],"hi":[1,1]}}}
//! {"type":"catalog","name":"laplace","params":{"mu":0.0,"b":1.0}}
//! {"type":"product","factors":[ ... 1-D specs ... ]}
//! ```
//! Infinite tail slopes (truncated support) are written as the strings
//! `"inf"` / `"-inf"`; `null` is accepted on input with the same meaning.

use super::{Density, Domain, PiecewiseLogLinearDensity, PolyhedralLogDensity, ProductDensity};
use crate::simplex::{HPolytope, Simplex};
use crate::{Error, Result};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::Spec(format!("missing field {name:?}")))
}

fn as_f64(v: &Value, ctx: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Spec(format!("{ctx}: expected a number, got {v}")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Spec(format!("{ctx}: expected an array")))
}

fn f64_vec(v: &Value, ctx: &str) -> Result<Vec<f64>> {
    as_array(v, ctx)?
        .iter()
        .map(|x| as_f64(x, ctx))
        .collect()
}

fn slope_from(v: &Value, sign: f64, ctx: &str) -> Result<f64> {
    match v {
        Value::Null => Ok(sign * f64::INFINITY),
        Value::String(s) => match s.as_str() {
            "inf" | "+inf" | "Infinity" => Ok(f64::INFINITY),
            "-inf" | "-Infinity" => Ok(f64::NEG_INFINITY),
            other => Err(Error::Spec(format!("{ctx}: unrecognized slope {other:?}"))),
        },
        other => as_f64(other, ctx),
    }
}

fn slope_to(s: f64) -> Value {
    if s == f64::INFINITY {
        Value::String("inf".into())
    } else if s == f64::NEG_INFINITY {
        Value::String("-inf".into())
    } else {
        json!(s)
    }
}

/// Parse a density from its JSON value.
pub fn density_from_value(v: &Value) -> Result<Density> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Spec("density spec must be a JSON object".into()))?;
    let ty = field(obj, "type")?
        .as_str()
        .ok_or_else(|| Error::Spec("field \"type\" must be a string".into()))?;
    match ty {
        "piecewise_loglinear" => Ok(Density::Piecewise(piecewise_from(obj)?)),
        "catalog" => {
            let name = field(obj, "name")?
                .as_str()
                .ok_or_else(|| Error::Spec("catalog name must be a string".into()))?;
            let mut params = BTreeMap::new();
            if let Some(p) = obj.get("params") {
                let pobj = p
                    .as_object()
                    .ok_or_else(|| Error::Spec("params must be an object".into()))?;
                for (k, pv) in pobj {
                    params.insert(k.clone(), as_f64(pv, &format!("params.{k}"))?);
                }
            }
            Ok(Density::Piecewise(super::catalog::by_name(name, &params)?))
        }
        "polyhedral" => {
            let dim = field(obj, "dim")?
                .as_u64()
                .ok_or_else(|| Error::Spec("dim must be a positive integer".into()))?
                as usize;
            let mut pieces = Vec::new();
            for (i, pv) in as_array(field(obj, "pieces")?, "pieces")?.iter().enumerate() {
                let pobj = pv
                    .as_object()
                    .ok_or_else(|| Error::Spec(format!("pieces[{i}] must be an object")))?;
                let a = f64_vec(field(pobj, "a")?, &format!("pieces[{i}].a"))?;
                let b = as_f64(field(pobj, "b")?, &format!("pieces[{i}].b"))?;
                pieces.push((a, b));
            }
            let domain = domain_from(field(obj, "domain")?)?;
            let (d, _) = PolyhedralLogDensity::new(dim, pieces, domain, 1e-6)?;
            Ok(Density::Polyhedral(d))
        }
        "product" => {
            let mut factors = Vec::new();
            for fv in as_array(field(obj, "factors")?, "factors")? {
                match density_from_value(fv)? {
                    Density::Piecewise(p) => factors.push(p),
                    _ => {
                        return Err(Error::Spec(
                            "product factors must be one-dimensional piecewise densities".into(),
                        ))
                    }
                }
            }
            Ok(Density::Product(ProductDensity::new(factors)?))
        }
        other => Err(Error::Spec(format!("unknown density type {other:?}"))),
    }
}

fn piecewise_from(obj: &Map<String, Value>) -> Result<PiecewiseLogLinearDensity> {
    let knots = f64_vec(field(obj, "knots")?, "knots")?;
    let logvals = f64_vec(field(obj, "logvals")?, "logvals")?;
    let left = slope_from(field(obj, "left_slope")?, 1.0, "left_slope")?;
    let right = slope_from(field(obj, "right_slope")?, -1.0, "right_slope")?;
    PiecewiseLogLinearDensity::new(knots, logvals, left, right)
}

fn domain_from(v: &Value) -> Result<Domain> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Spec("domain must be an object".into()))?;
    if let Some(b) = obj.get("box") {
        let bobj = b
            .as_object()
            .ok_or_else(|| Error::Spec("domain.box must be an object".into()))?;
        return Ok(Domain::Box {
            lo: f64_vec(field(bobj, "lo")?, "domain.box.lo")?,
            hi: f64_vec(field(bobj, "hi")?, "domain.box.hi")?,
        });
    }
    if let Some(h) = obj.get("halfspaces") {
        return Ok(Domain::Polytope(polytope_from_value(h)?));
    }
    Err(Error::Spec(
        "domain needs either \"box\" or \"halfspaces\"".into(),
    ))
}

/// Parse a density from a JSON string.
pub fn density_from_json(s: &str) -> Result<Density> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Spec(format!("invalid JSON: {e}")))?;
    density_from_value(&v)
}

/// Serialize a density to the schema above.
pub fn density_to_value(d: &Density) -> Value {
    match d {
        Density::Piecewise(p) => json!({
            "type": "piecewise_loglinear",
            "knots": p.knots(),
            "logvals": p.logvals_normalized(),
            "left_slope": slope_to(p.left_tail_slope()),
            "right_slope": slope_to(p.right_tail_slope()),
        }),
        Density::Polyhedral(p) => {
            let pieces: Vec<Value> = p
                .pieces()
                .iter()
                .map(|(a, b)| json!({"a": a, "b": b}))
                .collect();
            let domain = match p.domain() {
                Domain::Box { lo, hi } => json!({"box": {"lo": lo, "hi": hi}}),
                Domain::Polytope(pt) => {
                    let hs: Vec<Value> = pt
                        .halfspaces()
                        .iter()
                        .map(|(u, c)| json!({"u": u, "c": c}))
                        .collect();
                    json!({ "halfspaces": hs })
                }
            };
            json!({
                "type": "polyhedral",
                "dim": p.dim(),
                "pieces": pieces,
                "domain": domain,
                "log_norm": p.log_norm(),
            })
        }
        Density::Product(p) => {
            let factors: Vec<Value> = p
                .factors()
                .iter()
                .map(|f| density_to_value(&Density::Piecewise(f.clone())))
                .collect();
            json!({"type": "product", "factors": factors})
        }
    }
}

/// `{"vertices": [[...], ...]}`
pub fn simplex_from_value(v: &Value) -> Result<Simplex> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Spec("simplex spec must be an object".into()))?;
    let verts = as_array(field(obj, "vertices")?, "vertices")?
        .iter()
        .map(|row| f64_vec(row, "vertices"))
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(verts)
}

pub fn simplex_to_value(s: &Simplex) -> Value {
    json!({"vertices": s.vertices()})
}

/// `{"halfspaces": [{"u": [...], "c": ...}, ...]}`
pub fn polytope_from_value(v: &Value) -> Result<HPolytope> {
    let arr = match v {
        Value::Object(obj) => as_array(field(obj, "halfspaces")?, "halfspaces")?,
        Value::Array(a) => a,
        _ => return Err(Error::Spec("polytope spec must be an object or array".into())),
    };
    let mut hs = Vec::new();
    for (i, h) in arr.iter().enumerate() {
        let hobj = h
            .as_object()
            .ok_or_else(|| Error::Spec(format!("halfspaces[{i}] must be an object")))?;
        hs.push((
            f64_vec(field(hobj, "u")?, &format!("halfspaces[{i}].u"))?,
            as_f64(field(hobj, "c")?, &format!("halfspaces[{i}].c"))?,
        ));
    }
    HPolytope::new(hs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn piecewise_round_trip() {
        let d = super::super::catalog::laplace(0.5, 2.0);
        let v = density_to_value(&Density::Piecewise(d));
        let d2 = density_from_value(&v).unwrap();
        assert!((d2.log_density(&[0.5]).unwrap() - (-(4.0_f64).ln())).abs() < 1e-12);
    }

    #[test]
    fn catalog_spec_parses() {
        let d = density_from_json(
            r#"{"type":"catalog","name":"exponential","params":{"rate":2.0}}"#,
        )
        .unwrap();
        assert!((d.as_piecewise().unwrap().mean() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn truncated_slopes_round_trip() {
        let d = super::super::catalog::uniform(0.0, 1.0);
        let v = density_to_value(&Density::Piecewise(d));
        assert_eq!(v["left_slope"], Value::String("inf".into()));
        let d2 = density_from_value(&v).unwrap();
        assert_eq!(d2.log_density(&[-0.5]).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn reports_missing_fields() {
        let err = density_from_json(r#"{"type":"piecewise_loglinear","knots":[0.0]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("logvals"), "{err}");
    }

    #[test]
    fn simplex_round_trip() {
        let s = Simplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let s2 = simplex_from_value(&simplex_to_value(&s)).unwrap();
        assert_eq!(s2.volume(), 0.5);
    }
}
