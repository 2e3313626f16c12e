//! JSON wire formats: field literals are bare integers over prime fields
//! and little-endian coefficient lists over extensions; vectors and
//! matrices are nested arrays of field literals.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::FqMatrix;
use crate::orthogonal::OrthSumDecomposition;
use crate::vector::{FqVector, UnitSumDecomposition};

pub fn element_to_value(spec: &FieldSpec, x: FieldElement) -> Value {
    if spec.n() == 1 {
        json!(spec.index(x))
    } else {
        json!(spec.coeffs(x))
    }
}

pub fn element_from_value(spec: &FieldSpec, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(n) => {
            let k = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("not an integer field literal: {n}")))?;
            let p = spec.p() as i64;
            Ok(spec.from_u64(k.rem_euclid(p) as u64))
        }
        Value::Array(items) => {
            let mut coeffs = Vec::with_capacity(items.len());
            for item in items {
                let k = item
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("bad coefficient: {item}")))?;
                coeffs.push(k.rem_euclid(spec.p() as i64) as u64);
            }
            spec.from_coeffs(&coeffs)
        }
        other => Err(Error::Parse(format!("bad field literal: {other}"))),
    }
}

pub fn vector_to_value(spec: &FieldSpec, v: &FqVector) -> Value {
    Value::Array(
        v.coords
            .iter()
            .map(|&c| element_to_value(spec, c))
            .collect(),
    )
}

pub fn vector_from_value(spec: &FieldSpec, v: &Value) -> Result<FqVector> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("vector literal must be an array: {v}")))?;
    let coords = items
        .iter()
        .map(|item| element_from_value(spec, item))
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(Error::Parse("empty vector literal".into()));
    }
    Ok(FqVector::new(coords))
}

pub fn matrix_to_value(spec: &FieldSpec, m: &FqMatrix) -> Value {
    let rows: Vec<Value> = (0..m.dim())
        .map(|i| {
            Value::Array(
                (0..m.dim())
                    .map(|j| element_to_value(spec, m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_value(spec: &FieldSpec, v: &Value) -> Result<FqMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("matrix literal must be an array of rows: {v}")))?;
    let d = rows.len();
    if d == 0 {
        return Err(Error::Parse("empty matrix literal".into()));
    }
    let mut parsed = Vec::with_capacity(d);
    for row in rows {
        let items = row
            .as_array()
            .ok_or_else(|| Error::Parse(format!("matrix row must be an array: {row}")))?;
        if items.len() != d {
            return Err(Error::Parse(format!(
                "matrix row of length {} in a {}-row matrix",
                items.len(),
                d
            )));
        }
        parsed.push(
            items
                .iter()
                .map(|item| element_from_value(spec, item))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(FqMatrix::from_rows(parsed))
}

/// `{"target": [...], "parts": [[...], ...], "count": k}`
pub fn unit_decomposition_to_value(spec: &FieldSpec, dec: &UnitSumDecomposition) -> Value {
    json!({
        "target": vector_to_value(spec, &dec.target),
        "parts": dec.parts.iter().map(|p| vector_to_value(spec, p)).collect::<Vec<_>>(),
        "count": dec.count(),
    })
}

/// `{"target": [[...]], "parts": [[[...]], ...], "count": k, "verified": b}`
/// with the parts list optional for large dimensions.
pub fn orth_decomposition_to_value(
    spec: &FieldSpec,
    dec: &OrthSumDecomposition,
    emit_parts: bool,
    verified: bool,
) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("target".into(), matrix_to_value(spec, &dec.target));
    if emit_parts {
        obj.insert(
            "parts".into(),
            Value::Array(
                dec.parts
                    .iter()
                    .map(|p| matrix_to_value(spec, p.matrix()))
                    .collect(),
            ),
        );
    }
    obj.insert("count".into(), json!(dec.declared_count));
    obj.insert("verified".into(), json!(verified));
    Value::Object(obj)
}

/// CSV cell form of a field element; extension elements are quoted lists.
pub fn element_to_csv(spec: &FieldSpec, x: FieldElement) -> String {
    if spec.n() == 1 {
        format!("{}", spec.index(x))
    } else {
        format!("\"{}\"", spec.format_element(x))
    }
}
