//! JSON input format.
//!
//! ```json
//! {
//!   "dimension": 4,
//!   "blocks": [{"id": "M1", "genus": 0, "boundary": ["-1", "0", "1", "..."]}],
//!   "gluings": [{"from": "1", "to": "-1", "matrix": [[1, 1, 0], [0, 1, 1], [0, 3, 2]]}],
//!   "notes": ["optional free text"]
//! }
//! ```
//!
//! Integers may be JSON numbers of any size or decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::manifold::{BlockSpec, GluingSpec, ManifoldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::Schema { .. } => "SchemaError",
        }
    }
}

fn schema<T>(field: impl Into<String>, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Schema { field: field.into(), message: message.into() })
}

fn object<'a>(v: &'a Value, field: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, ParseError> {
    let Some(map) = v.as_object() else {
        return schema(field, "expected an object");
    };
    if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return schema(field, format!("unknown key `{key}`"));
    }
    Ok(map)
}

fn required<'a>(map: &'a Map<String, Value>, parent: &str, key: &str) -> Result<&'a Value, ParseError> {
    map.get(key).map_or_else(|| schema(join(parent, key), "missing field"), Ok)
}

fn join(parent: &str, key: &str) -> String {
    if parent.is_empty() {
        key.to_string()
    } else {
        format!("{parent}.{key}")
    }
}

fn integer(v: &Value, field: &str) -> Result<BigInt, ParseError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return schema(field, "expected an integer"),
    };
    BigInt::from_str(&text).or_else(|_| schema(field, format!("`{text}` is not an integer")))
}

fn small<T: TryFrom<BigInt>>(v: &Value, field: &str) -> Result<T, ParseError> {
    let x = integer(v, field)?;
    T::try_from(x.clone()).or_else(|_| schema(field, format!("{x} is out of range")))
}

fn string(v: &Value, field: &str) -> Result<String, ParseError> {
    match v.as_str() {
        Some(s) if !s.is_empty() => Ok(s.to_string()),
        Some(_) => schema(field, "label must not be empty"),
        None => schema(field, "expected a string"),
    }
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a [Value], ParseError> {
    v.as_array().map(Vec::as_slice).map_or_else(|| schema(field, "expected an array"), Ok)
}

fn matrix(v: &Value, field: &str, side: usize) -> Result<IntMatrix, ParseError> {
    let rows = array(v, field)?;
    if rows.len() != side {
        return schema(field, format!("expected {side} rows, found {}", rows.len()));
    }
    let mut parsed = Vec::with_capacity(side);
    for (i, row) in rows.iter().enumerate() {
        let rf = format!("{field}[{i}]");
        let entries = array(row, &rf)?;
        if entries.len() != side {
            return schema(rf, format!("expected {side} entries, found {}", entries.len()));
        }
        let row = entries
            .iter()
            .enumerate()
            .map(|(j, e)| integer(e, &format!("{rf}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(row);
    }
    Ok(IntMatrix::from_rows(&parsed).expect("rows checked to have equal length"))
}

pub fn parse_manifold(text: &str) -> Result<ManifoldSpec, ParseError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = object(&root, "", &["dimension", "blocks", "gluings", "notes"])?;

    let dimension: usize = small(required(top, "", "dimension")?, "dimension")?;
    if dimension == 0 {
        return schema("dimension", "must be positive");
    }

    let block_values = array(required(top, "", "blocks")?, "blocks")?;
    if block_values.is_empty() {
        return schema("blocks", "at least one block is required");
    }
    let mut blocks = Vec::with_capacity(block_values.len());
    for (i, b) in block_values.iter().enumerate() {
        let field = format!("blocks[{i}]");
        let map = object(b, &field, &["id", "genus", "boundary"])?;
        let id = string(required(map, &field, "id")?, &join(&field, "id"))?;
        let genus = small(required(map, &field, "genus")?, &join(&field, "genus"))?;
        let bf = join(&field, "boundary");
        let boundary = array(required(map, &field, "boundary")?, &bf)?
            .iter()
            .enumerate()
            .map(|(j, l)| string(l, &format!("{bf}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push(BlockSpec { id, genus, boundary });
    }

    let mut gluings = Vec::new();
    if let Some(g) = top.get("gluings") {
        for (i, g) in array(g, "gluings")?.iter().enumerate() {
            let field = format!("gluings[{i}]");
            let map = object(g, &field, &["from", "to", "matrix"])?;
            let from = string(required(map, &field, "from")?, &join(&field, "from"))?;
            let to = string(required(map, &field, "to")?, &join(&field, "to"))?;
            let matrix = matrix(required(map, &field, "matrix")?, &join(&field, "matrix"), dimension - 1)?;
            gluings.push(GluingSpec { from, to, matrix });
        }
    }

    let mut notes = Vec::new();
    if let Some(n) = top.get("notes") {
        for (i, note) in array(n, "notes")?.iter().enumerate() {
            match note.as_str() {
                Some(s) => notes.push(s.to_string()),
                None => return schema(format!("notes[{i}]"), "expected a string"),
            }
        }
    }

    Ok(ManifoldSpec { dimension, blocks, gluings, notes })
}

pub(crate) fn int_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer is a valid JSON number"))
}

pub(crate) fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(int_value).collect())).collect())
}

pub fn manifold_to_json(spec: &ManifoldSpec) -> Value {
    let blocks = spec
        .blocks
        .iter()
        .map(|b| {
            serde_json::json!({
                "id": b.id,
                "genus": b.genus,
                "boundary": b.boundary,
            })
        })
        .collect::<Vec<_>>();
    let gluings = spec
        .gluings
        .iter()
        .map(|g| {
            serde_json::json!({
                "from": g.from,
                "to": g.to,
                "matrix": matrix_value(&g.matrix),
            })
        })
        .collect::<Vec<_>>();
    let mut root = serde_json::json!({
        "dimension": spec.dimension,
        "blocks": blocks,
        "gluings": gluings,
    });
    if !spec.notes.is_empty() {
        root["notes"] = serde_json::json!(spec.notes);
    }
    root
}

pub fn serialize_manifold(spec: &ManifoldSpec) -> String {
    serde_json::to_string_pretty(&manifold_to_json(spec)).expect("JSON values always serialize")
}
