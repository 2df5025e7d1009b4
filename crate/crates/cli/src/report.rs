//! Machine- and human-readable reports. Given identical input the rendering
//! is byte-identical: all maps are ordered and floats print at fixed
//! precision.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            verdict: "pass".into(),
            witnesses: Vec::new(),
            data: None,
        }
    }

    pub fn fail(name: impl Into<String>, witnesses: Vec<String>) -> Self {
        CheckResult {
            name: name.into(),
            verdict: "fail".into(),
            witnesses,
            data: None,
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: impl Into<String>, object: Option<String>) -> Self {
        Report {
            command: command.into(),
            object,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.object {
            Some(object) => out.push_str(&format!("{} on {}\n", self.command, object)),
            None => out.push_str(&format!("{}\n", self.command)),
        }
        for check in &self.checks {
            out.push_str(&format!("[{}] {}\n", check.verdict, check.name));
            for witness in &check.witnesses {
                out.push_str(&format!("    witness: {witness}\n"));
            }
            if let Some(data) = &check.data {
                render_value(&mut out, data, 1);
            }
        }
        out.push_str(if self.all_pass() {
            "result: all checks passed\n"
        } else {
            "result: FAILURES\n"
        });
        out
    }
}

fn render_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "    ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                match inline(inner) {
                    Some(short) => out.push_str(&format!("{pad}{key}: {short}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_value(out, inner, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for inner in items {
                match inline(inner) {
                    Some(short) => out.push_str(&format!("{pad}- {short}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, inner, indent + 1);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", plain(value))),
    }
}

/// Scalars and short scalar arrays render on one line.
fn inline(value: &Value) -> Option<String> {
    match value {
        Value::Object(_) => None,
        Value::Array(items) => {
            if !items.iter().all(|v| !matches!(v, Value::Object(_) | Value::Array(_))) {
                return None;
            }
            let joined = items.iter().map(plain).collect::<Vec<_>>().join(", ");
            if joined.len() <= 60 {
                Some(format!("[{joined}]"))
            } else {
                None
            }
        }
        other => Some(plain(other)),
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
