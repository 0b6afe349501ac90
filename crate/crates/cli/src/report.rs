use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

pub use qdescent::lseries::Evidence;

/// Output of one command. serde_json maps keep keys sorted, so the JSON
/// form is byte-stable.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub evidence: Vec<Evidence>,
    pub warnings: Vec<String>,
}

pub fn evidence(claim: String, source: &str, anchor: &str) -> Evidence {
    Evidence {
        claim,
        source: source.into(),
        anchor: anchor.into(),
    }
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Value::Null,
            evidence: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", render(v));
            }
        }
        if !self.evidence.is_empty() {
            let _ = writeln!(out, "evidence:");
            for e in &self.evidence {
                let _ = writeln!(out, "  - {} [{}: {}]", e.claim, e.source, e.anchor);
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(m) if m.contains_key("text") => render(&m["text"]),
        Value::Object(m) if m.contains_key("verdict") => render(&m["verdict"]),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object()) => {
            format!("[{}]", xs.iter().map(render).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}
