//! JSON and plain-table rendering of reports.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("value serializes"),
        Format::Table => {
            let mut out = Vec::new();
            table(report, "", &mut out);
            out.join("\n")
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Number(_))) => {
            Some(items.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        }
        _ => None,
    }
}

/// One `key: value` line per leaf; nested keys are joined with dots and
/// list items are indexed.
fn table(v: &Value, prefix: &str, out: &mut Vec<String>) {
    if let Some(s) = scalar(v) {
        out.push(format!("{}: {s}", if prefix.is_empty() { "value" } else { prefix }));
        return;
    }
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            // Cycles and orbits read better in superscript notation.
            for (k, x) in map {
                if k == "orbit" {
                    if let Some(s) = x.as_str() {
                        out.push(format!("{}: {}", join(k), superscript(s)));
                        continue;
                    }
                }
                table(x, &join(k), out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push(format!("{prefix}: []"));
            }
            for (i, x) in items.iter().enumerate() {
                table(x, &join(&i.to_string()), out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// `3+^2 2+ 1-` rendered as `3₊²2₊1₋`.
fn superscript(text: &str) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut out = String::new();
    for row in text.split_whitespace() {
        let (head, mult) = row.split_once('^').unwrap_or((row, ""));
        for c in head.chars() {
            out.push(match c {
                '+' => '₊',
                '-' => '₋',
                c => c,
            });
        }
        out.extend(mult.chars().filter_map(|c| c.to_digit(10).map(|d| SUP[d as usize])));
    }
    if out.is_empty() {
        "∅".into()
    } else {
        out
    }
}
