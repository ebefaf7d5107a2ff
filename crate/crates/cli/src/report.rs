use std::fmt::Write as _;

use binodyn_core::check::{Rational, Trace};
use serde::Serialize;
use serde_json::{Map, Value};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub artifact: String,
    pub format: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub versions: Versions,
}

impl Report {
    pub fn new(command: &str, inputs: Map<String, Value>) -> Self {
        Report {
            command: command.into(),
            inputs,
            results: Value::Object(Map::new()),
            assertions: Vec::new(),
            versions: Versions { artifact: env!("CARGO_PKG_VERSION").into(), format: FORMAT_VERSION.into() },
        }
    }

    pub fn assert_trace(&mut self, trace: &Trace) {
        self.assertions.extend(
            trace.checks.iter().map(|c| Assertion { name: c.name.clone(), pass: c.pass, detail: c.detail.clone() }),
        );
    }

    pub fn assert(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.assertions.push(Assertion { name: name.into(), pass, detail: detail.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        out.push_str("inputs:\n");
        for (k, v) in &self.inputs {
            render(&mut out, k, v, 1);
        }
        out.push_str("results:\n");
        if let Value::Object(m) = &self.results {
            for (k, v) in m {
                render(&mut out, k, v, 1);
            }
        }
        let passed = self.assertions.iter().filter(|a| a.pass).count();
        writeln!(out, "assertions: {passed} of {} pass", self.assertions.len()).unwrap();
        for a in &self.assertions {
            let tag = if a.pass { "pass" } else { "FAIL" };
            writeln!(out, "  [{tag}] {}: {}", a.name, a.detail).unwrap();
        }
        out
    }
}

/// Rationals travel as `"num/den"` strings.
pub fn rat(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        writeln!(out, "{pad}{key}: {s}").unwrap();
        return;
    }
    writeln!(out, "{pad}{key}:").unwrap();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}
