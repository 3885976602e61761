//! Report encoding: versioned JSON with 12 significant digits, CSV helpers and sinks.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "geoaffine/1";

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Text form of `round12(x)`; non-finite values print as `inf`, `-inf`, `nan`.
pub fn fmt12(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        serde_json::Number::from_f64(round12(x)).map_or_else(|| x.to_string(), |n| n.to_string())
    }
}

/// Coordinates joined with `;` for a single CSV cell.
pub fn fmt_coords(c: &[f64]) -> String {
    c.iter().map(|&x| fmt12(x)).collect::<Vec<_>>().join(";")
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (None, None, Some(f)) => {
                serde_json::Number::from_f64(round12(f)).map_or(Value::Null, Value::Number)
            }
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(normalize).collect()),
        Value::Object(m) => {
            // A point serialises as {space, coords}; the space is stated once at the top.
            if m.len() == 2 && m.contains_key("space") && m.contains_key("coords") {
                return normalize(m["coords"].clone());
            }
            Value::Object(m.into_iter().map(|(k, v)| (k, normalize(v))).collect())
        }
        other => other,
    }
}

/// `{"schema": ..., <key>: <body>, ...extra}` with rounded numbers and compact points.
pub fn document<T: Serialize>(
    command: &str,
    body: &T,
    extra: Vec<(&str, Value)>,
) -> anyhow::Result<Value> {
    let mut m = Map::new();
    m.insert("schema".into(), Value::String(SCHEMA.into()));
    m.insert("command".into(), Value::String(command.into()));
    for (k, v) in extra {
        m.insert(k.into(), normalize(v));
    }
    m.insert("report".into(), normalize(serde_json::to_value(body)?));
    Ok(Value::Object(m))
}

pub fn to_json_text(v: &Value) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// CSV text from a header and string rows.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(
        w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))?,
    )?)
}

/// Writes `text` to `out`, or to standard output.
pub fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut so = std::io::stdout().lock();
            match so.write_all(text.as_bytes()).and_then(|_| so.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}
