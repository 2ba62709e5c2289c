use serde_json::{json, Map, Value};

use hilbk3::linalg::Q;

pub const SCHEMA: &str = "hilbk3.report/1";

/// Output of one command. `ok` is false when an internal check failed.
pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub trail: Vec<String>,
    pub ok: bool,
    /// Plain-text rendering for `--table`.
    pub table: String,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "input": self.input,
            "status": if self.ok { "ok" } else { "failed" },
            "result": self.result,
            "trail": self.trail,
        })
    }
}

pub fn error_json(command: &str, err: &anyhow::Error) -> Value {
    let kind = err
        .chain()
        .find_map(|e| {
            if let Some(e) = e.downcast_ref::<hilbk3::Error>() {
                return Some(match e {
                    hilbk3::Error::Invalid(_) => "invalid",
                    hilbk3::Error::Dimension(_) => "dimension",
                    hilbk3::Error::Degenerate(_) => "degenerate",
                    hilbk3::Error::Parse(_) => "parse",
                    hilbk3::Error::Overflow(_) => "overflow",
                    hilbk3::Error::Construction(_) => "construction",
                });
            }
            if e.downcast_ref::<std::io::Error>().is_some() {
                return Some("io");
            }
            e.downcast_ref::<serde_json::Error>().map(|_| "parse")
        })
        .unwrap_or("input");
    let chain: Vec<String> = err.chain().map(|e| e.to_string()).collect();
    let mut error = Map::new();
    error.insert("kind".into(), kind.into());
    error.insert("message".into(), err.to_string().into());
    if chain.len() > 1 {
        error.insert("causes".into(), chain[1..].into());
    }
    json!({
        "schema": SCHEMA,
        "command": command,
        "status": "error",
        "error": error,
    })
}

/// Exact rationals travel as `"p/q"` strings.
pub fn rational(x: &Q) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

/// Left-aligned columns separated by two spaces.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header.to_vec())];
    out.push(line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    ));
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}
