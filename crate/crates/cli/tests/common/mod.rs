//! A small JSON Schema checker covering the subset the shipped schemas use:
//! `type` (single or list), `enum`, `properties`/`required`,
//! `additionalProperties` (boolean or schema), and `items`.

use serde_json::Value;

pub fn validate(schema: &Value, value: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(schema_obj) = schema.as_object() else {
        errors.push(format!("{path}: schema node is not an object"));
        return;
    };

    if let Some(allowed) = schema_obj.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{path}: {value} not in enum {allowed:?}"));
        }
        return;
    }

    if let Some(ty) = schema_obj.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            errors.push(format!("{path}: {value} has none of the types {names:?}"));
            return;
        }
    }
    if value.is_null() {
        return; // a permitted null satisfies nothing further
    }

    if let Some(obj) = value.as_object() {
        let props = schema_obj.get("properties").and_then(Value::as_object);
        if let Some(required) = schema_obj.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    errors.push(format!("{path}: missing required property `{key}`"));
                }
            }
        }
        for (key, item) in obj {
            let child_path = format!("{path}/{key}");
            if let Some(prop_schema) = props.and_then(|p| p.get(key)) {
                validate(prop_schema, item, &child_path, errors);
            } else {
                match schema_obj.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        errors.push(format!("{path}: unexpected property `{key}`"));
                    }
                    Some(extra) if extra.is_object() => {
                        validate(extra, item, &child_path, errors);
                    }
                    _ => {}
                }
            }
        }
    }

    if let (Some(items), Some(array)) = (schema_obj.get("items"), value.as_array()) {
        for (i, item) in array.iter().enumerate() {
            validate(items, item, &format!("{path}[{i}]"), errors);
        }
    }
}

pub fn assert_valid(schema_file: &str, output: &str) {
    let schema_path = format!("{}/../../schemas/{schema_file}", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(&schema_path)
            .unwrap_or_else(|e| panic!("reading {schema_path}: {e}")),
    )
    .expect("schema files are valid JSON");
    let value: Value = serde_json::from_str(output.trim())
        .unwrap_or_else(|e| panic!("command output is not one JSON document: {e}\n{output}"));
    let mut errors = Vec::new();
    validate(&schema, &value, "$", &mut errors);
    assert!(
        errors.is_empty(),
        "output does not match {schema_file}:\n{}\n{output}",
        errors.join("\n")
    );
}
