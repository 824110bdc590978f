//! JSON form of cells and complexes; rationals are `"num/den"` strings.

use super::complex::{Ambient, FaceComplex};
use super::polyhedron::{Constraint, HPolyhedron};
use super::rat::{fmt_rat, parse_rat};
use crate::error::{Error, Result};
use crate::int::Int;
use serde_json::{json, Value};

fn parse_int(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| Error::Malformed(format!("normal entry {n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| Error::Malformed(format!("normal entry {s:?} is not an integer"))),
        _ => Err(Error::Malformed("normal entries must be integers".into())),
    }
}

fn parse_rat_value(v: &Value) -> Result<super::rat::Rat> {
    match v {
        Value::Number(n) => parse_rat(&n.to_string()).ok_or_else(|| Error::Malformed(format!("bad rational {n}"))),
        Value::String(s) => parse_rat(s).ok_or_else(|| Error::Malformed(format!("bad rational {s:?}"))),
        _ => Err(Error::Malformed("offsets must be rationals".into())),
    }
}

fn int_value(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn rows(v: Option<&Value>, r: usize) -> Result<Vec<Constraint>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    let arr = v.as_array().ok_or_else(|| Error::Malformed("constraint list must be an array".into()))?;
    arr.iter()
        .map(|row| {
            let row = row.as_array().ok_or_else(|| Error::Malformed("constraint must be an array".into()))?;
            if row.len() != r + 1 {
                return Err(Error::DimensionMismatch { expected: r + 1, got: row.len() });
            }
            let normal = row[..r].iter().map(parse_int).collect::<Result<Vec<_>>>()?;
            Ok(Constraint::new(normal, parse_rat_value(&row[r])?))
        })
        .collect()
}

pub fn cell_from_json(v: &Value) -> Result<HPolyhedron> {
    let r = v
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Malformed("cell needs ambient_dim".into()))? as usize;
    let sed = match v.get("sedentarity") {
        None => Vec::new(),
        Some(s) => s
            .as_array()
            .ok_or_else(|| Error::Malformed("sedentarity must be an array".into()))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::Malformed("bad sedentarity index".into())))
            .collect::<Result<Vec<_>>>()?,
    };
    HPolyhedron::new(r, sed, rows(v.get("ineqs"), r)?, rows(v.get("eqs"), r)?)
}

pub fn cell_to_json(p: &HPolyhedron) -> Value {
    let row = |c: &Constraint| {
        let mut v: Vec<Value> = c.normal.iter().map(int_value).collect();
        v.push(json!(fmt_rat(&c.offset)));
        Value::Array(v)
    };
    json!({
        "ambient_dim": p.ambient_dim,
        "sedentarity": p.sedentarity,
        "ineqs": p.ineqs.iter().map(row).collect::<Vec<_>>(),
        "eqs": p.eqs.iter().map(row).collect::<Vec<_>>(),
    })
}

/// `{"ambient_dim": r, "ambient": "R" | "T", "cells": [...]}`; cell ids are
/// list positions. Without `"ambient"`, `T` is assumed exactly when some cell
/// has nonempty sedentarity.
pub fn complex_from_json(v: &Value) -> Result<FaceComplex> {
    let r = v
        .get("ambient_dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Malformed("complex needs ambient_dim".into()))? as usize;
    let cells = v
        .get("cells")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("complex needs a cells array".into()))?
        .iter()
        .map(cell_from_json)
        .collect::<Result<Vec<_>>>()?;
    match v.get("ambient").and_then(Value::as_str) {
        None => FaceComplex::new(r, cells),
        Some("R") => FaceComplex::new_in(Ambient::Euclidean, r, cells),
        Some("T") => FaceComplex::new_in(Ambient::Tropical, r, cells),
        Some(other) => Err(Error::Malformed(format!("unknown ambient {other:?}"))),
    }
}

pub fn complex_to_json(c: &FaceComplex) -> Value {
    json!({
        "ambient_dim": c.ambient_dim(),
        "ambient": if c.ambient() == Ambient::Tropical { "T" } else { "R" },
        "cells": c.cells().iter().map(cell_to_json).collect::<Vec<_>>(),
    })
}
