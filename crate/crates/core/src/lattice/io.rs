//! JSON function files:
//! `{"dim": 2, "mode": "float"|"rational", "entries": [{"v": [x, y], "value": 1.5 | "3/2"}]}`.
//! An optional `"meta"` object is carried through untouched.

use std::str::FromStr;

use num::BigRational;
use serde_json::{json, Map, Value};

use super::{LatticeFunction, LatticePoint, Scalar};
use crate::{Error, Result};

/// A function read from disk in either arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyFunction {
    Float(LatticeFunction<f64>),
    Rational(LatticeFunction<BigRational>),
}

impl AnyFunction {
    pub fn dim(&self) -> usize {
        match self {
            Self::Float(f) => f.dim(),
            Self::Rational(f) => f.dim(),
        }
    }

    pub fn to_f64(&self) -> LatticeFunction<f64> {
        match self {
            Self::Float(f) => f.clone(),
            Self::Rational(f) => f.to_f64(),
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Self::Float(_) => f64::MODE,
            Self::Rational(_) => BigRational::MODE,
        }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

/// Parses a function file; errors name the offending field or JSON line.
pub fn parse_function(text: &str) -> Result<AnyFunction> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| fail(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let obj = root
        .as_object()
        .ok_or_else(|| fail("top level must be an object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|d| *d >= 1)
        .ok_or_else(|| fail("dim: expected a positive integer"))? as usize;
    let mode = match obj.get("mode") {
        None => "float",
        Some(Value::String(s)) if s == "float" || s == "rational" => s.as_str(),
        Some(_) => return Err(fail("mode: expected \"float\" or \"rational\"")),
    };
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| fail("entries: expected an array"))?;
    match mode {
        "float" => parse_entries(dim, entries, float_value).map(AnyFunction::Float),
        _ => parse_entries(dim, entries, rational_value).map(AnyFunction::Rational),
    }
}

fn float_value(v: &Value) -> std::result::Result<f64, String> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| "not representable as f64".to_string()),
        Value::String(s) => BigRational::from_str(s)
            .map(|r| r.as_f64())
            .or_else(|_| s.parse::<f64>())
            .map_err(|_| format!("cannot parse {s:?}")),
        _ => Err("expected a number or a fraction string".into()),
    }
}

fn rational_value(v: &Value) -> std::result::Result<BigRational, String> {
    match v {
        Value::String(s) => {
            BigRational::from_str(s.trim()).map_err(|_| format!("cannot parse fraction {s:?}"))
        }
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err("expected a fraction string like \"3/2\" or an integer".into()),
    }
}

fn parse_entries<V: Scalar>(
    dim: usize,
    entries: &[Value],
    value: impl Fn(&Value) -> std::result::Result<V, String>,
) -> Result<LatticeFunction<V>> {
    let mut points = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let coords = e
            .get("v")
            .and_then(Value::as_array)
            .ok_or_else(|| fail(format!("entries[{i}].v: expected an array of integers")))?;
        if coords.len() != dim {
            return Err(fail(format!(
                "entries[{i}].v: expected {dim} coordinates, got {}",
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .map(Value::as_i64)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| fail(format!("entries[{i}].v: coordinates must be integers")))?;
        let raw = e
            .get("value")
            .ok_or_else(|| fail(format!("entries[{i}].value: missing")))?;
        let v = value(raw).map_err(|m| fail(format!("entries[{i}].value: {m}")))?;
        if !(v > V::zero()) {
            return Err(fail(format!(
                "entries[{i}].value: must be positive, got {v}"
            )));
        }
        points.push((LatticePoint::new(coords), v));
    }
    LatticeFunction::from_entries(dim, points).map_err(|e| match e {
        Error::DuplicateVertex(p) => fail(format!("entries: duplicate vertex {p}")),
        other => other,
    })
}

/// Serialises a function in the file format; `meta` is embedded when given.
pub fn function_to_json<V: Scalar>(f: &LatticeFunction<V>, meta: Option<Value>) -> Value {
    let entries: Vec<Value> = f
        .iter()
        .map(|(p, v)| {
            let value = if V::MODE == "float" {
                json!(v.as_f64())
            } else {
                json!(v.to_string())
            };
            json!({ "v": p.coords(), "value": value })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("dim".into(), json!(f.dim()));
    obj.insert("mode".into(), json!(V::MODE));
    obj.insert("entries".into(), Value::Array(entries));
    if let Some(m) = meta {
        obj.insert("meta".into(), m);
    }
    Value::Object(obj)
}

pub fn any_to_json(f: &AnyFunction, meta: Option<Value>) -> Value {
    match f {
        AnyFunction::Float(g) => function_to_json(g, meta),
        AnyFunction::Rational(g) => function_to_json(g, meta),
    }
}
