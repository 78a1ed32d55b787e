//! Result reports: a JSON tree, printed as-is in machine mode or as indented
//! `key: value` lines otherwise. Key order is insertion order, so identical jobs
//! give identical bytes.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use graphprod_core::torform::TorTable;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub field: String,
    pub n_max: usize,
    pub s_max: usize,
    pub results: Value,
    /// Set by commands that check agreements; `false` maps to exit code 1.
    #[serde(skip)]
    pub passed: bool,
}

impl Report {
    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let mut head = Map::new();
        head.insert("command".into(), json!(self.command));
        if let Some(t) = &self.target {
            head.insert("target".into(), json!(t));
        }
        head.insert("field".into(), json!(self.field));
        head.insert("n_max".into(), json!(self.n_max));
        head.insert("s_max".into(), json!(self.s_max));
        render_map(&head, 0, &mut out);
        render_value_under("results", &self.results, 0, &mut out);
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_map(m: &Map<String, Value>, indent: usize, out: &mut String) {
    for (k, v) in m {
        render_value_under(k, v, indent, out);
    }
}

fn render_value_under(key: &str, v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        v if is_scalar(v) => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(v));
        }
        Value::Array(xs) if xs.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            let parts: Vec<String> = xs.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", parts.join(", "));
        }
        Value::Array(xs) if xs.is_empty() => {
            let _ = writeln!(out, "{pad}{key}: (none)");
        }
        Value::Array(xs) => {
            let _ = writeln!(out, "{pad}{key}:");
            for x in xs {
                match x {
                    Value::Object(m) => {
                        let mut item = String::new();
                        render_map(m, indent + 4, &mut item);
                        // first line moves up onto the dash
                        let _ = write!(out, "{pad}  - {}", item.trim_start());
                    }
                    Value::Array(_) => render_value_under("-", x, indent + 2, out),
                    x => {
                        let _ = writeln!(out, "{pad}  - {}", scalar(x));
                    }
                }
            }
        }
        Value::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            render_map(m, indent + 2, out);
        }
        _ => unreachable!(),
    }
}

/// Nonzero entries keyed by `(s, n)`, plus the grid and its trusted range.
pub fn tor_value(t: &TorTable) -> Value {
    let entries: Vec<Value> = t
        .nonzero()
        .into_iter()
        .map(|(s, n, d)| json!({"s": s, "n": n, "dim": d}))
        .collect();
    json!({
        "provenance": t.provenance().to_string(),
        "trusted_range": {"s_max": t.s_max(), "n_max": t.n_max()},
        "nonzero": entries,
        "grid": t.to_string().lines().collect::<Vec<_>>(),
    })
}
