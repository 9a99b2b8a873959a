//! Plain-text rendering of JSON reports.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_rows(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object))
}

/// Rows of objects become aligned columns; other values are printed as
/// `key  value` lines.
pub fn render(v: &Value) -> String {
    let mut out = Vec::new();
    match v {
        Value::Object(map) => {
            let (nested, flat): (Vec<_>, Vec<_>) = map.iter().partition(|(_, x)| is_rows(x));
            let width = flat.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, x) in flat {
                out.push(format!("{k:<width$}  {}", cell(x)));
            }
            for (k, rows) in nested {
                out.push(String::new());
                out.push(format!("{k}:"));
                out.push(columns(rows.as_array().expect("rows")));
            }
        }
        Value::Array(rows) if rows.iter().all(Value::is_object) => out.push(columns(rows)),
        other => out.push(cell(other)),
    }
    out.join("\n")
}

fn columns(rows: &[Value]) -> String {
    let mut keys: Vec<&String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("rows are objects").keys() {
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| keys.iter().map(|k| r.get(k.as_str()).map_or("-".into(), cell)).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| cells.iter().map(|c| c[i].len()).chain([k.len()]).max().unwrap_or(0))
        .collect();
    let line = |c: Vec<String>| {
        c.iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(keys.iter().map(|k| k.to_string()).collect())];
    out.extend(cells.into_iter().map(line));
    out.join("\n")
}
