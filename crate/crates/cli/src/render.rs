//! Plain-text view of a JSON result: one `key  value` line per scalar, with
//! nested keys joined by dots and arrays of objects printed as tables.

use serde_json::Value;

pub fn text(value: &Value) -> String {
    let mut out = String::new();
    walk("", value, &mut out);
    let width = out
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(k, _)| k.len())
        .max()
        .unwrap_or(0);
    out.lines()
        .map(|l| match l.split_once('\t') {
            Some((k, v)) => format!("{k:<width$}  {v}\n"),
            None => format!("{l}\n"),
        })
        .collect()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn walk(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                walk(&join(prefix, k), v, out);
            }
        }
        Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_object) => table(prefix, rows, out),
        other => out.push_str(&format!("{prefix}\t{}\n", scalar(other))),
    }
}

fn table(name: &str, rows: &[Value], out: &mut String) {
    out.push_str(&format!("{name}:\n"));
    let columns: Vec<&String> = rows[0].as_object().map(|m| m.keys().collect()).unwrap_or_default();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| scalar(&row[c.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |fields: Vec<&str>| {
        let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(columns.iter().map(|c| c.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}
