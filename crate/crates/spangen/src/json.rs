//! JSON and CSV formats for graphs, activity tables, polynomials and roots.
//!
//! Exact rationals are written as `"p/q"` strings; floats as JSON numbers.
//! Non-real values become `{"re": .., "im": ..}` objects.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use spangen_core::scalar::{parse_rational, rational_string};
use spangen_core::{
    ActivityTable, DegreeVector, Edge, Graph, MultiPoly, Region, Root, RootSet, Scalar, UniPoly,
    VertexId,
};

use crate::error::{format_err, Result};

fn float_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Exact { re, im } if im.is_zero() => json!(rational_string(re)),
        Scalar::Exact { re, im } => json!({ "re": rational_string(re), "im": rational_string(im) }),
        Scalar::Float(z) if z.im == 0.0 => float_json(z.re),
        Scalar::Float(z) => json!({ "re": float_json(z.re), "im": float_json(z.im) }),
    }
}

/// Strings and JSON numbers are read as exact rationals (numbers by their
/// decimal literal).
fn real_part(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::rational(parse_rational(s)?)),
        Value::Number(n) => Ok(Scalar::rational(parse_rational(&n.to_string())?)),
        other => Err(format_err!(
            "expected a number or \"p/q\" string, got {other}"
        )),
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::Object(o) => {
            let part = |k: &str| o.get(k).map_or(Ok(Scalar::zero()), real_part);
            let (re, im) = (part("re")?, part("im")?);
            let (Some(re), Some(im)) = (re.as_rational(), im.as_rational()) else {
                unreachable!("parsed parts are exact");
            };
            Ok(Scalar::gaussian(re.clone(), im.clone()))
        }
        other => real_part(other),
    }
}

fn id_from_json(v: &Value) -> Result<VertexId> {
    v.as_u64()
        .and_then(|x| VertexId::try_from(x).ok())
        .ok_or_else(|| format_err!("bad vertex id {v}"))
}

fn id_from_key(k: &str) -> Result<VertexId> {
    k.trim()
        .parse()
        .map_err(|_| format_err!("bad vertex id {k:?}"))
}

pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({ "u": e.u, "v": e.v, "lambda": scalar_to_json(&e.weight) }))
        .collect();
    json!({ "vertices": g.vertices(), "edges": edges })
}

/// Missing `lambda` means weight 1; missing `vertices` means the edge
/// endpoints.
pub fn graph_from_json(v: &Value) -> Result<Graph> {
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err!("graph JSON needs an \"edges\" array"))?
        .iter()
        .map(|e| {
            let end = |k: &str| {
                e.get(k)
                    .ok_or_else(|| format_err!("edge without {k:?}: {e}"))
                    .and_then(id_from_json)
            };
            let weight = match e.get("lambda") {
                Some(l) => scalar_from_json(l)?,
                None => Scalar::one(),
            };
            Ok(Edge::new(end("u")?, end("v")?, weight))
        })
        .collect::<Result<Vec<_>>>()?;
    let vertices: Vec<VertexId> = match v.get("vertices") {
        Some(Value::Array(a)) => a.iter().map(id_from_json).collect::<Result<_>>()?,
        Some(other) => return Err(format_err!("\"vertices\" must be an array, got {other}")),
        None => edges
            .iter()
            .flat_map(|e| [e.u, e.v])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    Ok(Graph::new(vertices, edges)?)
}

fn scalar_list(v: &Value) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| format_err!("expected an array of activities, got {v}"))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

/// `{"activities": {id: [...]}}` or `{"all": [...]}`.
pub fn activities_from_json(g: &Graph, v: &Value) -> Result<ActivityTable> {
    if let Some(all) = v.get("all") {
        return Ok(ActivityTable::uniform(g, &scalar_list(all)?)?);
    }
    let table = v
        .get("activities")
        .and_then(Value::as_object)
        .ok_or_else(|| format_err!("activity JSON needs \"activities\" or \"all\""))?
        .iter()
        .map(|(k, u)| Ok((id_from_key(k)?, scalar_list(u)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ActivityTable::new(g, table)?)
}

pub fn activities_to_json(u: &ActivityTable) -> Value {
    let table: Map<String, Value> = u
        .iter()
        .map(|(v, acts)| {
            (
                v.to_string(),
                Value::Array(acts.iter().map(scalar_to_json).collect()),
            )
        })
        .collect();
    json!({ "activities": table })
}

/// A term coefficient split into `re` and `im` fields.
fn coefficient_fields(c: &Scalar) -> (Value, Value) {
    match c {
        Scalar::Exact { re, im } => (json!(rational_string(re)), json!(rational_string(im))),
        Scalar::Float(z) => (float_json(z.re), float_json(z.im)),
    }
}

pub fn multipoly_to_json(p: &MultiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let exp: Map<String, Value> =
                m.iter().map(|(v, e)| (v.to_string(), json!(e))).collect();
            let (re, im) = coefficient_fields(c);
            json!({ "exp": exp, "re": re, "im": im })
        })
        .collect();
    json!({ "vars": p.vars(), "terms": terms })
}

pub fn multipoly_from_json(v: &Value) -> Result<MultiPoly> {
    let vars = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err!("polynomial JSON needs \"vars\""))?
        .iter()
        .map(id_from_json)
        .collect::<Result<Vec<_>>>()?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err!("polynomial JSON needs \"terms\""))?
        .iter()
        .map(|t| {
            let exp = t
                .get("exp")
                .and_then(Value::as_object)
                .ok_or_else(|| format_err!("term without \"exp\": {t}"))?
                .iter()
                .map(|(k, e)| {
                    let e = e.as_u64().and_then(|e| u32::try_from(e).ok());
                    Ok((
                        id_from_key(k)?,
                        e.ok_or_else(|| format_err!("bad exponent in {t}"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut c = Map::new();
            for k in ["re", "im"] {
                if let Some(x) = t.get(k) {
                    c.insert(k.into(), x.clone());
                }
            }
            Ok((
                DegreeVector::from_pairs(exp),
                scalar_from_json(&Value::Object(c))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiPoly::from_terms(vars, terms))
}

pub fn unipoly_to_json(p: &UniPoly, var: &str) -> Value {
    json!({ "var": var, "coefficients": p.coeffs().iter().map(scalar_to_json).collect::<Vec<_>>() })
}

/// `{"coefficients": [...]}` or a bare array, lowest degree first.
pub fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    let list = v.get("coefficients").unwrap_or(v);
    Ok(UniPoly::new(scalar_list(list)?))
}

/// Comma-separated coefficients, lowest degree first.
pub fn unipoly_from_list(s: &str) -> Result<UniPoly> {
    let coeffs = s
        .split(',')
        .map(|t| Ok(Scalar::rational(parse_rational(t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(coeffs))
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": float_json(z.re), "im": float_json(z.im) })
}

pub fn root_to_json(r: &Root) -> Value {
    json!({ "re": float_json(r.z.re), "im": float_json(r.z.im), "mult": r.mult })
}

/// Every root, the origin first when it is one.
pub fn all_roots(rs: &RootSet) -> Vec<Root> {
    let mut out = Vec::with_capacity(rs.roots.len() + 1);
    if rs.origin_multiplicity > 0 {
        out.push(Root {
            z: Complex64::new(0.0, 0.0),
            mult: rs.origin_multiplicity,
        });
    }
    out.extend_from_slice(&rs.roots);
    out
}

pub const ROOTS_CSV_HEADER: &str = "re,im,mult,modulus,arg";

pub fn roots_csv(roots: &[Root]) -> String {
    let mut out = String::from(ROOTS_CSV_HEADER);
    out.push('\n');
    for r in roots {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.z.re,
            r.z.im,
            r.mult,
            r.modulus(),
            r.arg()
        ));
    }
    out
}

/// `S[θ]`, `κD` or `κE`; `θ` may be written `pi`, `pi/3`, `2pi/3` or as a
/// number.
pub fn parse_region(s: &str) -> Result<Region> {
    let s = s.trim();
    let bad = || format_err!("bad region {s:?}; expected S[theta], kD or kE");
    if let Some(inner) = s.strip_prefix("S[").and_then(|x| x.strip_suffix(']')) {
        return Ok(Region::sector(parse_angle(inner).ok_or_else(bad)?)?);
    }
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad());
    if let Some(k) = s.strip_suffix('D') {
        return Ok(Region::disk(if k.is_empty() { 1.0 } else { num(k)? })?);
    }
    if let Some(k) = s.strip_suffix('E') {
        return Ok(Region::exterior(if k.is_empty() { 1.0 } else { num(k)? })?);
    }
    Err(bad())
}

fn parse_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Some(x);
    }
    let (top, den) = match s.split_once('/') {
        Some((t, d)) => (t.trim(), d.trim().parse::<f64>().ok()?),
        None => (s, 1.0),
    };
    let coef = top.strip_suffix("pi")?.trim();
    let coef = if coef.is_empty() {
        1.0
    } else {
        coef.trim_end_matches('*').parse::<f64>().ok()?
    };
    Some(coef * PI / den)
}

pub fn region_to_json(r: &Region) -> Value {
    match *r {
        Region::Sector { theta } => {
            json!({ "type": "sector", "theta": theta, "label": r.to_string() })
        }
        Region::Disk { kappa } => {
            json!({ "type": "disk", "kappa": float_json(kappa), "label": r.to_string() })
        }
        Region::Exterior { kappa } => {
            json!({ "type": "exterior", "kappa": kappa, "label": r.to_string() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spangen_core::GraphKind;

    #[test]
    fn scalars_round_trip() {
        for s in [
            "3/4",
            "-2",
            "0",
            "{\"re\":\"1/2\",\"im\":\"-3\"}",
            "0.25",
            "{\"re\":1}",
        ] {
            let v: Value = serde_json::from_str(
                if s.starts_with('{') {
                    s.to_string()
                } else {
                    format!("\"{s}\"")
                }
                .as_str(),
            )
            .unwrap();
            let x = scalar_from_json(&v).unwrap();
            assert_eq!(scalar_from_json(&scalar_to_json(&x)).unwrap(), x);
        }
        assert_eq!(scalar_to_json(&Scalar::ratio(6, 8)), json!("3/4"));
        assert_eq!(scalar_from_json(&json!(0.5)).unwrap(), Scalar::ratio(1, 2));
        assert!(scalar_from_json(&json!([1])).is_err());
    }

    #[test]
    fn graphs_round_trip() {
        let g = GraphKind::Petersen.generate().unwrap();
        let back = graph_from_json(&graph_to_json(&g)).unwrap();
        assert_eq!(back, g);
        let k3 = graph_from_json(
            &json!({"edges": [{"u":0,"v":1}, {"u":1,"v":2,"lambda":"1/2"}, {"u":2,"v":0}]}),
        )
        .unwrap();
        assert_eq!(k3.num_vertices(), 3);
        assert_eq!(k3.edges()[1].weight, Scalar::ratio(1, 2));
    }

    #[test]
    fn activity_tables() {
        let k3 = GraphKind::Complete(3).generate().unwrap();
        let u = activities_from_json(&k3, &json!({"all": ["1", "1", 0]})).unwrap();
        assert_eq!(u, ActivityTable::matching(&k3));
        assert_eq!(
            activities_from_json(&k3, &activities_to_json(&u)).unwrap(),
            u
        );
        assert!(activities_from_json(&k3, &json!({"all": ["1", "1"]})).is_err());
    }

    #[test]
    fn polynomials_round_trip() {
        let g = GraphKind::Complete(4).generate().unwrap();
        let z = spangen_core::subgraph::omega(&g).unwrap();
        assert_eq!(multipoly_from_json(&multipoly_to_json(&z)).unwrap(), z);
        let p = unipoly_from_list("1, 3/4,3/4,1").unwrap();
        assert_eq!(unipoly_from_json(&unipoly_to_json(&p, "y")).unwrap(), p);
    }

    #[test]
    fn regions_parse() {
        assert_eq!(parse_region("S[pi]").unwrap(), Region::Sector { theta: PI });
        assert_eq!(
            parse_region("S[2pi/3]").unwrap(),
            Region::Sector {
                theta: 2.0 * PI / 3.0
            }
        );
        assert_eq!(parse_region("0.5D").unwrap(), Region::Disk { kappa: 0.5 });
        assert_eq!(parse_region("E").unwrap(), Region::Exterior { kappa: 1.0 });
        assert!(parse_region("S[4]").is_err());
        assert!(parse_region("disk").is_err());
    }
}
