//! Enough of JSON Schema for the report schema: `type`, `enum`, `const`,
//! `required`, `properties`, `additionalProperties: false`, `items`,
//! `minimum`, `oneOf`, `anyOf`, `not` and local `$ref`s.

use serde_json::Value;

pub fn load() -> Value {
    let text = include_str!("../../schema/report.schema.json");
    serde_json::from_str(text).expect("schema parses")
}

pub fn check(root: &Value, instance: &Value) -> Result<(), String> {
    let mut errors = Vec::new();
    walk(root, root, instance, "$", &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("\n"))
    }
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        other => panic!("unsupported type `{other}`"),
    }
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let name = reference.strip_prefix("#/$defs/").unwrap_or_else(|| panic!("unsupported $ref {reference}"));
    &root["$defs"][name]
}

fn walk(root: &Value, schema: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(s) = schema.as_object() else { return };
    for key in s.keys() {
        assert!(
            matches!(
                key.as_str(),
                "$schema" | "title" | "$defs" | "$ref" | "type" | "enum" | "const" | "required" | "properties"
                    | "additionalProperties" | "items" | "minimum" | "oneOf" | "anyOf" | "not"
            ),
            "schema keyword `{key}` is not supported"
        );
    }
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        walk(root, resolve(root, r), v, path, errors);
    }
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(name) => type_matches(name, v),
            Value::Array(names) => names.iter().any(|n| type_matches(n.as_str().unwrap(), v)),
            _ => panic!("bad type keyword"),
        };
        if !ok {
            errors.push(format!("{path}: expected type {t}, got {v}"));
            return;
        }
    }
    if let Some(options) = s.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            errors.push(format!("{path}: {v} not in {}", Value::Array(options.clone())));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            errors.push(format!("{path}: expected {c}, got {v}"));
        }
    }
    if let Some(min) = s.get("minimum").and_then(Value::as_i64) {
        if v.as_i64().is_some_and(|x| x < min) {
            errors.push(format!("{path}: {v} below minimum {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        if let Some(req) = s.get("required").and_then(Value::as_array) {
            for k in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(k) {
                    errors.push(format!("{path}: missing `{k}`"));
                }
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        if let Some(props) = props {
            for (k, sub) in props {
                if let Some(x) = obj.get(k) {
                    walk(root, sub, x, &format!("{path}.{k}"), errors);
                }
            }
        }
        if s.get("additionalProperties") == Some(&Value::Bool(false)) {
            for k in obj.keys() {
                if !props.is_some_and(|p| p.contains_key(k)) {
                    errors.push(format!("{path}: unexpected property `{k}`"));
                }
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            walk(root, items, x, &format!("{path}[{i}]"), errors);
        }
    }
    let passes = |sub: &Value| {
        let mut e = Vec::new();
        walk(root, sub, v, path, &mut e);
        e
    };
    if let Some(options) = s.get("oneOf").and_then(Value::as_array) {
        let results: Vec<Vec<String>> = options.iter().map(passes).collect();
        let matching = results.iter().filter(|e| e.is_empty()).count();
        if matching != 1 {
            errors.push(format!("{path}: {matching} oneOf branches match"));
            if matching == 0 {
                if let Some(best) = results.iter().min_by_key(|e| e.len()) {
                    errors.extend(best.iter().cloned());
                }
            }
        }
    }
    if let Some(options) = s.get("anyOf").and_then(Value::as_array) {
        let results: Vec<Vec<String>> = options.iter().map(passes).collect();
        if results.iter().all(|e| !e.is_empty()) {
            errors.push(format!("{path}: no anyOf branch matches"));
            if let Some(best) = results.iter().min_by_key(|e| e.len()) {
                errors.extend(best.iter().cloned());
            }
        }
    }
    if let Some(sub) = s.get("not") {
        if passes(sub).is_empty() {
            errors.push(format!("{path}: matches a forbidden schema"));
        }
    }
}
