//! Rendering of command outputs: pretty JSON by default, or a plain-text
//! layout where objects become aligned key/value lines and arrays of objects
//! become column tables.

use crate::Format;
use serde_json::Value;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("report serializes"),
        Format::Table => {
            let mut out = String::new();
            block(value, 0, &mut out);
            out.trim_end().to_string()
        }
    }
}

fn indent(depth: usize) -> String {
    "  ".repeat(depth)
}

/// A value is flat when it renders on a single line.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items
            .iter()
            .all(|x| !matches!(x, Value::Object(_) | Value::Array(_))),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(inline).collect::<Vec<_>>().join(", ")
        ),
        Value::Object(_) => serde_json::to_string(v).expect("report serializes"),
        other => other.to_string(),
    }
}

fn block(value: &Value, depth: usize, out: &mut String) {
    match value {
        Value::Object(map) => {
            let width = map
                .iter()
                .filter(|(_, v)| is_flat(v))
                .map(|(k, _)| k.len())
                .max()
                .unwrap_or(0);
            for (k, v) in map {
                if is_flat(v) {
                    out.push_str(&format!("{}{:<width$}  {}\n", indent(depth), k, inline(v)));
                } else {
                    out.push_str(&format!("{}{}:\n", indent(depth), k));
                    block(v, depth + 1, out);
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            columns(items, depth, out);
        }
        Value::Array(items) => {
            for v in items {
                if is_flat(v) {
                    out.push_str(&format!("{}{}\n", indent(depth), inline(v)));
                } else {
                    block(v, depth, out);
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", indent(depth), inline(other))),
    }
}

/// Renders an array of objects as one aligned table, columns in first-seen
/// key order.
fn columns(items: &[Value], depth: usize, out: &mut String) {
    let mut cols: Vec<&str> = Vec::new();
    for item in items {
        if let Value::Object(map) = item {
            for k in map.keys() {
                if !cols.iter().any(|c| c == k) {
                    cols.push(k);
                }
            }
        }
    }
    let mut rows: Vec<Vec<String>> = vec![cols.iter().map(|c| c.to_string()).collect()];
    for item in items {
        rows.push(
            cols.iter()
                .map(|c| item.get(*c).map(inline).unwrap_or_else(|| "-".into()))
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..cols.len())
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(&format!("{}{}\n", indent(depth), line.trim_end()));
    }
}
