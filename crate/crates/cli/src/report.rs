use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Everything a subcommand produced. Field names are part of the
/// machine output format.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub timing_ms: f64,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            checks: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn set_timing(&mut self, d: Duration) {
        self.timing_ms = d.as_secs_f64() * 1e3;
    }

    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for (k, v) in &self.results {
            match v {
                Value::Array(items)
                    if items
                        .iter()
                        .any(|x| !x.is_string() || plain(x).contains('\n')) =>
                {
                    let _ = writeln!(out, "{k}:");
                    for item in items {
                        let _ = writeln!(out, "  {}", plain(item).replace('\n', "\n  "));
                    }
                }
                Value::Object(m) => {
                    let _ = writeln!(out, "{k}:");
                    for (a, b) in m {
                        let _ = writeln!(out, "  {a}  {}", plain(b));
                    }
                }
                _ => {
                    let _ = writeln!(out, "{k}: {}", plain(v));
                }
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "[{mark}] {}: {}", c.name, c.detail);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(", "),
        Value::Object(_) => v.to_string(),
        _ => v.to_string(),
    }
}
