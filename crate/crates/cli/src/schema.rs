//! Structural validation of the JSON outputs against the shipped schema
//! files (schemas/*.schema.json). Covers the subset of JSON Schema the
//! schemas use: type, required, properties, enum, items and self-references.

use serde_json::Value;

pub const CERTIFICATE_SCHEMA: &str = include_str!("../schemas/certificate.schema.json");
pub const FROBPOLY_SCHEMA: &str = include_str!("../schemas/frobpoly.schema.json");

/// Validate a value against a (sub)schema; `root` is the whole schema for
/// resolving `$ref: "#"`.
fn validate(value: &Value, schema: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref") {
        if r == "#" {
            return validate(value, root, root, path);
        }
        return Err(format!("{path}: unsupported $ref {r}"));
    }
    if let Some(options) = schema.get("enum").and_then(|e| e.as_array()) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in enum"));
        }
        return Ok(());
    }
    match schema.get("type").and_then(|t| t.as_str()) {
        Some("object") => {
            let obj = value.as_object().ok_or(format!("{path}: expected object"))?;
            if let Some(req) = schema.get("required").and_then(|r| r.as_array()) {
                for key in req {
                    let key = key.as_str().unwrap();
                    if !obj.contains_key(key) {
                        return Err(format!("{path}: missing required key {key}"));
                    }
                }
            }
            if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
                for (key, sub) in props {
                    if let Some(v) = obj.get(key) {
                        validate(v, sub, root, &format!("{path}.{key}"))?;
                    }
                }
            }
            Ok(())
        }
        Some("array") => {
            let arr = value.as_array().ok_or(format!("{path}: expected array"))?;
            if let Some(items) = schema.get("items") {
                for (i, v) in arr.iter().enumerate() {
                    validate(v, items, root, &format!("{path}[{i}]"))?;
                }
            }
            Ok(())
        }
        Some("string") => {
            if value.is_string() {
                Ok(())
            } else {
                Err(format!("{path}: expected string"))
            }
        }
        Some("integer") => {
            if value.is_i64() || value.is_u64() {
                Ok(())
            } else {
                Err(format!("{path}: expected integer"))
            }
        }
        Some(other) => Err(format!("{path}: unsupported schema type {other}")),
        None => Ok(()),
    }
}

pub fn validate_against(value: &Value, schema_text: &str) -> Result<(), String> {
    let schema: Value =
        serde_json::from_str(schema_text).map_err(|e| format!("schema parse: {e}"))?;
    validate(value, &schema, &schema, "$")
}

pub fn validate_certificate(value: &Value) -> Result<(), String> {
    validate_against(value, CERTIFICATE_SCHEMA)
}

pub fn validate_frobpoly(value: &Value) -> Result<(), String> {
    validate_against(value, FROBPOLY_SCHEMA)
}
