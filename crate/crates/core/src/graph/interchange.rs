//! JSON interchange for graphs.
//!
//! A graph file is one object: `{"vertices": N, "edges": [[u, v, W], ...],
//! "kind": "...", "meta": {...}}` with 0-based vertex indices. A weight W is
//! either `{"num": "..", "den": ".."}` for an exact rational or
//! `{"poly": [c0, c1, ...]}` for an integer polynomial with ascending
//! coefficients. Numeric fields are written as decimal strings so magnitude
//! is unbounded; readers also accept plain JSON integers. A reflection
//! annotation extends the same object with `involution`, `axis`, and `side`
//! arrays.
//!
//! Parsing never panics; every malformed input is reported as an error, so
//! these entry points are safe to drive with arbitrary bytes.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{EdgeWeight, GraphError, Side, SymmetricGraph, WeightedMultigraph};
use crate::exact::{IntPoly, Rat};

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation at {place}: {message}")]
    Schema { place: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn schema(place: impl Into<String>, message: impl Into<String>) -> InterchangeError {
    InterchangeError::Schema {
        place: place.into(),
        message: message.into(),
    }
}

/// Upper bound on the declared vertex count accepted from a file. Keeps
/// obviously bogus inputs from flowing into later size computations.
pub const MAX_FILE_VERTICES: u64 = 1 << 32;

/// Parsed contents of a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: WeightedMultigraph,
    pub kind: String,
    pub meta: Value,
}

fn bigint_from_value(v: &Value, place: &str) -> Result<BigInt, InterchangeError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(schema(place, "expected an integer, got a float"))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| schema(place, format!("not a decimal integer: {s:?}"))),
        other => Err(schema(
            place,
            format!("expected an integer or decimal string, got {other}"),
        )),
    }
}

fn index_from_value(v: &Value, place: &str, limit: u64) -> Result<usize, InterchangeError> {
    let u = match v {
        Value::Number(n) => n
            .as_u64()
            .ok_or_else(|| schema(place, "expected a non-negative integer index"))?,
        Value::String(s) => s
            .parse::<u64>()
            .map_err(|_| schema(place, format!("not an index: {s:?}")))?,
        other => Err(schema(place, format!("expected an index, got {other}")))?,
    };
    if u >= limit {
        return Err(schema(place, format!("index {u} out of range (< {limit})")));
    }
    usize::try_from(u).map_err(|_| schema(place, "index does not fit this platform"))
}

fn weight_from_value(v: &Value, place: &str) -> Result<EdgeWeight, InterchangeError> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(place, format!("weight must be an object, got {v}")))?;
    let has = |k: &str| obj.contains_key(k);
    if has("poly") {
        if obj.len() != 1 {
            return Err(schema(place, "polynomial weight takes only the key \"poly\""));
        }
        let arr = obj["poly"]
            .as_array()
            .ok_or_else(|| schema(place, "\"poly\" must be an array of coefficients"))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for (k, c) in arr.iter().enumerate() {
            coeffs.push(bigint_from_value(c, &format!("{place}.poly[{k}]"))?);
        }
        return Ok(EdgeWeight::Poly(IntPoly::from_coeffs(coeffs)));
    }
    if has("num") {
        if obj.len() > 2 || (obj.len() == 2 && !has("den")) {
            return Err(schema(place, "rational weight takes keys \"num\" and \"den\""));
        }
        let num = bigint_from_value(&obj["num"], &format!("{place}.num"))?;
        let den = match obj.get("den") {
            Some(d) => bigint_from_value(d, &format!("{place}.den"))?,
            None => BigInt::from(1),
        };
        if den == BigInt::from(0) {
            return Err(schema(place, "zero denominator"));
        }
        return Ok(EdgeWeight::Rational(Rat::new(num, den)));
    }
    Err(schema(
        place,
        "weight needs either \"num\"/\"den\" or \"poly\"",
    ))
}

fn weight_to_value(w: &EdgeWeight) -> Value {
    match w {
        EdgeWeight::Rational(r) => json!({
            "num": r.numer().to_string(),
            "den": r.denom().to_string(),
        }),
        EdgeWeight::Poly(p) => json!({
            "poly": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
    }
}

/// Serializes a graph with its kind tag and free-form metadata.
pub fn graph_to_value(g: &WeightedMultigraph, kind: &str, meta: &Value) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|(u, v, w)| json!([u, v, weight_to_value(w)]))
        .collect();
    json!({
        "vertices": g.vertex_count(),
        "edges": edges,
        "kind": kind,
        "meta": meta,
    })
}

pub fn graph_to_string(g: &WeightedMultigraph, kind: &str, meta: &Value) -> String {
    let v = graph_to_value(g, kind, meta);
    serde_json::to_string_pretty(&v).expect("plain JSON value always serializes")
}

fn parse_graph_object(obj: &Map<String, Value>) -> Result<ParsedGraph, InterchangeError> {
    let vertices_value = obj
        .get("vertices")
        .ok_or_else(|| schema("$", "missing \"vertices\""))?;
    let vertex_count = index_from_value(vertices_value, "$.vertices", MAX_FILE_VERTICES)?;
    let edges_value = obj
        .get("edges")
        .ok_or_else(|| schema("$", "missing \"edges\""))?
        .as_array()
        .ok_or_else(|| schema("$.edges", "must be an array"))?;
    let mut edges = Vec::with_capacity(edges_value.len());
    for (k, e) in edges_value.iter().enumerate() {
        let place = format!("$.edges[{k}]");
        let triple = e
            .as_array()
            .ok_or_else(|| schema(&place, "edge must be [u, v, weight]"))?;
        if triple.len() != 3 {
            return Err(schema(&place, format!("edge has {} fields, expected 3", triple.len())));
        }
        let u = index_from_value(&triple[0], &format!("{place}[0]"), vertex_count as u64)?;
        let v = index_from_value(&triple[1], &format!("{place}[1]"), vertex_count as u64)?;
        let w = weight_from_value(&triple[2], &format!("{place}[2]"))?;
        edges.push((u, v, w));
    }
    let kind = match obj.get("kind") {
        None => String::from("multigraph"),
        Some(Value::String(s)) => s.clone(),
        Some(other) => return Err(schema("$.kind", format!("must be a string, got {other}"))),
    };
    let meta = obj.get("meta").cloned().unwrap_or_else(|| json!({}));
    Ok(ParsedGraph {
        graph: WeightedMultigraph::new(vertex_count, edges)?,
        kind,
        meta,
    })
}

/// Parses a graph file. Rejects anything that does not conform; never
/// panics on malformed input.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, InterchangeError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("$", "top level must be an object"))?;
    parse_graph_object(obj)
}

fn side_to_str(s: Side) -> &'static str {
    match s {
        Side::Above => "above",
        Side::Below => "below",
        Side::Axis => "axis",
    }
}

fn side_from_value(v: &Value, place: &str) -> Result<Side, InterchangeError> {
    match v.as_str() {
        Some("above") => Ok(Side::Above),
        Some("below") => Ok(Side::Below),
        Some("axis") => Ok(Side::Axis),
        _ => Err(schema(place, format!("expected \"above\", \"below\" or \"axis\", got {v}"))),
    }
}

/// Serializes a reflection-annotated graph: the plain graph object extended
/// with the involution, the ordered axis list, and the side classification.
pub fn symmetric_to_value(sg: &SymmetricGraph, kind: &str, meta: &Value) -> Value {
    let mut value = graph_to_value(sg.graph(), kind, meta);
    let obj = value.as_object_mut().expect("graph serializes to an object");
    obj.insert("involution".into(), json!(sg.involution()));
    obj.insert("axis".into(), json!(sg.axis_vertices()));
    obj.insert(
        "side".into(),
        json!(sg.sides().iter().map(|&s| side_to_str(s)).collect::<Vec<_>>()),
    );
    value
}

pub fn symmetric_to_string(sg: &SymmetricGraph, kind: &str, meta: &Value) -> String {
    let v = symmetric_to_value(sg, kind, meta);
    serde_json::to_string_pretty(&v).expect("plain JSON value always serializes")
}

/// Parsed contents of a reflection-annotated graph file.
#[derive(Debug, Clone)]
pub struct ParsedSymmetric {
    pub symmetric: SymmetricGraph,
    pub kind: String,
    pub meta: Value,
}

/// Parses a reflection-annotated graph file; never panics on malformed
/// input. All reflection invariants are revalidated on the way in.
pub fn parse_symmetric(text: &str) -> Result<ParsedSymmetric, InterchangeError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| schema("$", "top level must be an object"))?;
    let parsed = parse_graph_object(obj)?;
    let n = parsed.graph.vertex_count();
    let index_list = |key: &str| -> Result<Vec<usize>, InterchangeError> {
        let arr = obj
            .get(key)
            .ok_or_else(|| schema("$", format!("missing \"{key}\"")))?
            .as_array()
            .ok_or_else(|| schema(format!("$.{key}"), "must be an array"))?;
        arr.iter()
            .enumerate()
            .map(|(k, v)| index_from_value(v, &format!("$.{key}[{k}]"), n as u64))
            .collect()
    };
    let involution = index_list("involution")?;
    let axis = index_list("axis")?;
    let side_arr = obj
        .get("side")
        .ok_or_else(|| schema("$", "missing \"side\""))?
        .as_array()
        .ok_or_else(|| schema("$.side", "must be an array"))?;
    let side = side_arr
        .iter()
        .enumerate()
        .map(|(k, v)| side_from_value(v, &format!("$.side[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let symmetric = SymmetricGraph::new(parsed.graph, involution, axis, side)?;
    Ok(ParsedSymmetric {
        symmetric,
        kind: parsed.kind,
        meta: parsed.meta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{builders, EdgeWeight};
    use crate::exact::{rat, ratio};

    #[test]
    fn graph_round_trip() {
        let g = WeightedMultigraph::new(
            3,
            vec![
                (0, 1, EdgeWeight::Rational(ratio(1, 2))),
                (1, 2, EdgeWeight::Poly(IntPoly::from_i64(&[0, 1]))),
                (0, 1, EdgeWeight::one()),
            ],
        )
        .unwrap();
        let text = graph_to_string(&g, "test", &json!({"note": "tiny"}));
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.graph, g);
        assert_eq!(back.kind, "test");
        assert_eq!(back.meta["note"], "tiny");
    }

    #[test]
    fn accepts_integer_or_string_numerics() {
        let text = r#"{
            "vertices": 2,
            "edges": [[0, "1", {"num": 3}], ["1", 0, {"num": "-7", "den": "2"}]]
        }"#;
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.kind, "multigraph");
        let w: Vec<_> = parsed.graph.edges().iter().map(|e| e.2.clone()).collect();
        assert!(w.contains(&EdgeWeight::Rational(rat(3))));
        assert!(w.contains(&EdgeWeight::Rational(ratio(-7, 2))));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "[]",
            "{\"vertices\": 2}",
            "{\"vertices\": 1, \"edges\": [[0, 0, {\"num\": 1}]]}",
            "{\"vertices\": 2, \"edges\": [[0, 2, {\"num\": 1}]]}",
            "{\"vertices\": 2, \"edges\": [[0, 1, {\"num\": 1, \"den\": 0}]]}",
            "{\"vertices\": 2, \"edges\": [[0, 1, {\"weird\": 1}]]}",
            "{\"vertices\": 2, \"edges\": [[0, 1, {\"num\": 1.5}]]}",
            "{\"vertices\": 2, \"edges\": [[0, 1]]}",
            "{\"vertices\": -1, \"edges\": []}",
            "not json",
        ] {
            assert!(parse_graph(bad).is_err(), "accepted: {bad}");
        }
    }

    #[test]
    fn rational_weights_normalize() {
        let text = r#"{"vertices": 2, "edges": [[0, 1, {"num": "4", "den": "-6"}]]}"#;
        let parsed = parse_graph(text).unwrap();
        assert_eq!(
            parsed.graph.edges()[0].2,
            EdgeWeight::Rational(ratio(-2, 3))
        );
    }

    #[test]
    fn symmetric_round_trip() {
        let sg = builders::symmetric_cylinder(3, 2).unwrap();
        let text = symmetric_to_string(&sg, "cylinder", &json!({}));
        let back = parse_symmetric(&text).unwrap();
        assert_eq!(back.symmetric.graph(), sg.graph());
        assert_eq!(back.symmetric.involution(), sg.involution());
        assert_eq!(back.symmetric.axis_vertices(), sg.axis_vertices());
        assert_eq!(back.symmetric.sides(), sg.sides());
    }

    #[test]
    fn symmetric_rejects_broken_involution() {
        let sg = builders::symmetric_cylinder(3, 2).unwrap();
        let mut value = symmetric_to_value(&sg, "cylinder", &json!({}));
        value["involution"][1] = json!(1);
        let text = serde_json::to_string(&value).unwrap();
        assert!(parse_symmetric(&text).is_err());
    }
}

