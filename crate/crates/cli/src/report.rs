use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Solved,
    NoSolution,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Solved
        } else {
            Verdict::NoSolution
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Solved => 0,
            Verdict::NoSolution => 1,
        }
    }
}

/// A flat table; the CSV view of a report.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let esc = |s: &String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        };
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            out.push_str(&line.iter().map(esc).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: u32,
    pub tool: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub seed: u64,
    pub verdict: Verdict,
    pub results: Value,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
    #[serde(skip)]
    pub table: Option<Table>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            version: SCHEMA_VERSION,
            tool: format!("surfgrp {}", env!("CARGO_PKG_VERSION")),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            seed,
            verdict: Verdict::Solved,
            results: Value::Null,
            witnesses: Vec::new(),
            timings: None,
            table: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// The table if there is one, else a one-row projection of the results.
    pub fn to_csv(&self) -> String {
        if let Some(t) = &self.table {
            return t.to_csv();
        }
        let mut t = Table::new(&["command", "verdict"]);
        let mut row = vec![self.command.clone(), serde_json::to_value(self.verdict).unwrap().as_str().unwrap().to_string()];
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                if !(v.is_object() || v.is_array()) {
                    t.header.push(k.clone());
                    row.push(match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    });
                }
            }
        }
        t.push(row);
        t.to_csv()
    }
}
