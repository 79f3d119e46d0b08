//! Rendering of command results as JSON, CSV or plain text.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Flat records plus the configuration that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub config: Value,
    pub records: Vec<Map<String, Value>>,
    /// JSON-lines (a header line, then one record per line) instead of one envelope.
    pub streaming: bool,
    /// Column order used when there are no records to infer it from.
    pub columns: Vec<String>,
    pub footer: Option<String>,
}

impl Report {
    pub fn new(config: Value) -> Self {
        Self {
            config,
            records: Vec::new(),
            streaming: false,
            columns: Vec::new(),
            footer: None,
        }
    }

    pub fn push<T: Serialize>(&mut self, rec: &T) {
        match serde_json::to_value(rec).expect("records serialize") {
            Value::Object(map) => self.records.push(map),
            other => {
                let mut map = Map::new();
                map.insert("value".into(), other);
                self.records.push(map);
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_json(&self) -> String {
        if self.streaming {
            let mut out = json!({ "tool_version": TOOL_VERSION, "config": self.config }).to_string();
            out.push('\n');
            for r in &self.records {
                out.push_str(&Value::Object(r.clone()).to_string());
                out.push('\n');
            }
            out
        } else {
            let env = json!({ "tool_version": TOOL_VERSION, "config": self.config, "records": self.records });
            format!("{env}\n")
        }
    }

    fn column_names(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for r in &self.records {
            for k in r.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
        if cols.is_empty() {
            cols = self.columns.clone();
        }
        cols
    }

    fn render_csv(&self) -> String {
        let cols = self.column_names();
        let mut w = csv::Writer::from_writer(Vec::new());
        if !cols.is_empty() {
            w.write_record(&cols).expect("in-memory write");
        }
        for r in &self.records {
            w.write_record(cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let line: Vec<String> = r
                .iter()
                .filter(|(_, v)| !v.is_null())
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        if let Some(f) = &self.footer {
            out.push_str(f);
            out.push('\n');
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(";")
        }
        other => other.to_string(),
    }
}

pub fn error_json(kind: &str, message: &str) -> String {
    format!(
        "{}\n",
        json!({ "tool_version": TOOL_VERSION, "error": { "kind": kind, "message": message } })
    )
}
