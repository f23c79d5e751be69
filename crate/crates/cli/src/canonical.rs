//! Canonical JSON: members sorted by key, no whitespace, integers as
//! integers and every other number as `{:.16e}` (17 significant digits,
//! which round-trips any `f64`).

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

pub fn to_canonical(v: &Value) -> Result<String, CliError> {
    let mut out = String::new();
    write(v, &mut out)?;
    Ok(out)
}

fn write(v: &Value, out: &mut String) -> Result<(), CliError> {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                let x = n.as_f64().ok_or_else(|| CliError::Parse(format!("unrepresentable number {n}")))?;
                out.push_str(&format_real(x)?);
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write(item, out)?;
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.into_iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("string serializes"));
                out.push(':');
                write(&map[key], out)?;
            }
            out.push('}');
        }
    }
    Ok(())
}

/// Floats as `{:.16e}`; negative zero is written as zero.
pub fn format_real(x: f64) -> Result<String, CliError> {
    if x == 0.0 {
        Ok(format!("{:.16e}", 0.0))
    } else if x.is_finite() {
        Ok(format!("{x:.16e}"))
    } else {
        Err(CliError::Failed(format!("cannot serialize non-finite number {x}")))
    }
}

/// Real-valued JSON number; callers canonicalize before writing.
pub fn real(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

/// Hex SHA-256 of the canonical form.
pub fn digest(v: &Value) -> Result<String, CliError> {
    Ok(hex::encode(Sha256::digest(to_canonical(v)?.as_bytes())))
}
