//! JSON and CSV rendering with every float rounded to 9 significant digits.
//!
//! Rows are serialized once to `serde_json::Value` (field order preserved);
//! the CSV header is the key list of the first row and each cell is the same
//! text the JSON encoder writes, so both formats carry identical numbers.

use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SIG_DIGITS: usize = 9;

/// Nearest double to `x` written with [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            *v = Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(data: &T) -> Value {
    let mut v = serde_json::to_value(data).expect("plain data serializes");
    round_value(&mut v);
    v
}

pub fn json<T: Serialize>(data: &T) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(data)).expect("plain data serializes");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One CSV table from a list of flat records.
pub fn csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let values: Vec<Map<String, Value>> = rows
        .iter()
        .map(|r| match to_value(r) {
            Value::Object(m) => m,
            _ => unreachable!("rows are structs"),
        })
        .collect();
    if let Some(first) = values.first() {
        w.write_record(first.keys()).expect("in-memory write");
    }
    for m in &values {
        w.write_record(m.values().map(cell)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
