use std::time::Duration;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// The outcome of one command: its result payload plus named checks.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: Vec<String>,
    pub result: Map<String, Value>,
    pub checks: Vec<Check>,
    pub duration: Duration,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport { command, ..Default::default() }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.result.insert(key.to_string(), serde_json::to_value(value).expect("report values serialize"));
    }

    /// Merges the fields of a serializable struct into the result.
    pub fn extend(&mut self, value: impl Serialize) {
        match serde_json::to_value(value).expect("report values serialize") {
            Value::Object(m) => self.result.extend(m),
            other => {
                self.result.insert("value".into(), other);
            }
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Result fields at the top level, followed by the run metadata.
    pub fn to_json(&self) -> Value {
        let mut m = self.result.clone();
        m.insert("command".into(), Value::from(self.command.join(" ")));
        m.insert("checks".into(), serde_json::to_value(&self.checks).expect("checks serialize"));
        m.insert("passed".into(), Value::from(self.passed()));
        m.insert("duration_ms".into(), Value::from(self.duration.as_millis() as u64));
        Value::Object(m)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("command: {}\n", self.command.join(" "));
        let width = self.result.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, v) in &self.result {
            let text = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k:<width$}  {text}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name));
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{} in {:.3}s\n", if self.passed() { "passed" } else { "FAILED" }, self.duration.as_secs_f64()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_puts_result_fields_first_level() {
        let mut r = RunReport::new(vec!["rsk".into()]);
        r.set("P", vec![vec![1, 3], vec![2]]);
        r.check("ok", true, None);
        let v = r.to_json();
        assert_eq!(v["P"], serde_json::json!([[1, 3], [2]]));
        assert_eq!(v["passed"], Value::Bool(true));
        r.check("bad", false, Some("x".into()));
        assert!(!r.passed());
        assert!(r.to_table().contains("[FAIL] bad: x"));
    }
}
