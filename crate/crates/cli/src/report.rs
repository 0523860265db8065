//! Output formatting.

use serde_json::{Map, Value};

use findim::Dimension;

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Round every floating-point number in `v` to 12 significant digits.
pub fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

pub fn dimension_fields(out: &mut Map<String, Value>, d: Dimension) {
    out.insert("kind".into(), d.kind().into());
    if let Some(v) = d.value() {
        out.insert("value".into(), v.into());
    }
}

pub fn dimension_value(d: Dimension) -> Value {
    let mut m = Map::new();
    dimension_fields(&mut m, d);
    Value::Object(m)
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Human-readable `key: value` lines; nested values are shown as compact
/// JSON.
pub fn table(v: &Value) -> String {
    match v {
        Value::Object(o) => {
            let width = o.keys().map(String::len).max().unwrap_or(0);
            o.iter().map(|(k, v)| format!("{k:<width$}  {}\n", scalar(v))).collect()
        }
        Value::Array(a) => a.iter().map(|x| format!("{}\n", scalar(x))).collect(),
        other => format!("{}\n", scalar(other)),
    }
}
