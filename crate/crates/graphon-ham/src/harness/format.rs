//! Text formats read and written by the CLI.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphon::{Partition, StepGraphon};
use crate::rational::{format_rational, parse_rational, Rational};

fn rational_of(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        // Plain JSON numbers are read through their literal text.
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("{what}: expected a rational string, got {other}"))),
    }
}

/// Reads `{"partition": [...], "values": [[...], ...]}` with entries given as
/// fraction or decimal strings.
pub fn parse_graphon_json(text: &str) -> Result<StepGraphon> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("graphon file must be a JSON object".into()))?;
    let points = obj
        .get("partition")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"partition\"".into()))?
        .iter()
        .map(|v| rational_of(v, "partition"))
        .collect::<Result<Vec<_>>>()?;
    let rows = obj
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing array field \"values\"".into()))?;
    let values = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("\"values\" must be an array of arrays".into()))?
                .iter()
                .map(|v| rational_of(v, "values"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    StepGraphon::new(Partition::new(points)?, values)
}

/// Writes a graphon with lowest-terms fraction strings.
pub fn graphon_to_json(w: &StepGraphon) -> Value {
    json!({
        "partition": w.partition().points().iter().map(format_rational).collect::<Vec<_>>(),
        "values": w
            .values()
            .iter()
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Comma-separated integers, e.g. `1,2,3,2`.
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty integer list".into()));
    }
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {part:?}")))
        })
        .collect()
}
