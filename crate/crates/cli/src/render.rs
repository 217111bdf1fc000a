use serde_json::{Map, Value};

use crate::commands::Output;

/// Reports serialize with sorted keys, so equal inputs give byte-identical output.
pub fn output(out: &Output, json: bool) -> String {
    match out {
        Output::Text(t) => t.clone(),
        Output::Report(m) if json => {
            let mut s = serde_json::to_string_pretty(m).expect("reports are plain JSON");
            s.push('\n');
            s
        }
        Output::Report(m) => {
            let mut s = String::new();
            object(&mut s, m, 0);
            s
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(" "),
        Value::Object(o) => o.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn object(out: &mut String, m: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match v {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{k}:\n"));
                object(out, inner, depth + 1);
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{k}:\n"));
                for item in items {
                    out.push_str(&format!("{pad}  - {}\n", scalar(item)));
                }
            }
            _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
        }
    }
}
