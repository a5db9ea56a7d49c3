//! JSON envelopes and their aligned-text rendering.

use num_bigint::BigUint;
use serde_json::{json, Map, Number, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// An exact integer as a JSON number, whatever its size.
pub fn big(n: &BigUint) -> Value {
    number(&n.to_string())
}

/// A numeric literal (already in JSON number syntax) as a JSON number.
pub fn number(literal: &str) -> Value {
    Value::Number(literal.parse::<Number>().expect("valid JSON number literal"))
}

pub fn envelope(command: &str, inputs: Value, result: Value, precision_bits: Option<u32>) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("inputs".into(), inputs);
    m.insert("result".into(), result);
    if let Some(p) = precision_bits {
        m.insert("precision_bits".into(), json!(p));
    }
    m.insert("version".into(), json!(VERSION));
    Value::Object(m)
}

pub fn error_object(command: &str, kind: &str, message: &str) -> String {
    let v = json!({
        "command": command,
        "error": { "kind": kind, "message": message },
        "version": VERSION,
    });
    serde_json::to_string(&v).expect("serializable")
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// One `key  value` line per scalar leaf; nested keys are joined with dots
/// and arrays of scalars are kept on one line. Numbers are printed with the
/// same literal as in the JSON output.
pub fn to_text(v: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", v, &mut lines);
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in lines {
        out.push_str(&format!("{k:<width$}  {val}\n"));
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| !matches!(i, Value::Object(_) | Value::Array(_))),
        _ => true,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, child) in m {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) if !is_scalar(v) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_stay_exact() {
        let n: BigUint = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big(&n).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn envelope_key_order() {
        let e = envelope("x", json!({}), json!(1), Some(128));
        let keys: Vec<&String> = e.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "inputs", "result", "precision_bits", "version"]);
        let e = envelope("x", json!({}), json!(1), None);
        assert_eq!(e.as_object().unwrap().len(), 4);
    }

    #[test]
    fn text_flattening() {
        let v = json!({"a": {"b": 1, "c": [1, 2]}, "d": [{"e": "x"}]});
        assert_eq!(to_text(&v), "a.b     1\na.c     [1, 2]\nd[0].e  x\n");
    }
}
