//! Structured experiment output.
//!
//! A report serializes as a JSON object with the fixed key order
//! `name, params, seed, values, bounds, hard_pass, notes`. Each entry of
//! `bounds` records an observed quantity, the bound it is compared with and
//! a status: `"pass"`/`"fail"` for hard assertions, `"informational"` for
//! bounds that only hold asymptotically.

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub params: Map<String, Value>,
    pub seed: Option<u64>,
    pub values: Map<String, Value>,
    pub bounds: Map<String, Value>,
    pub hard_pass: bool,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        let mut params = Map::new();
        params.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        Report {
            name: name.into(),
            params,
            seed: None,
            values: Map::new(),
            bounds: Map::new(),
            hard_pass: true,
            notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn value(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.values.insert(key.into(), value.into());
        self
    }

    /// Records a hard assertion. A failure clears `hard_pass`; reusing a key
    /// overwrites the entry but never restores `hard_pass`.
    pub fn hard(&mut self, key: &str, observed: impl Into<Value>, bound: impl Into<Value>, ok: bool) -> &mut Self {
        self.hard_pass &= ok;
        let status = if ok { "pass" } else { "fail" };
        self.bounds.insert(key.into(), json!({ "observed": observed.into(), "bound": bound.into(), "status": status }));
        self
    }

    pub fn info(&mut self, key: &str, observed: impl Into<Value>, bound: impl Into<Value>) -> &mut Self {
        self.bounds
            .insert(key.into(), json!({ "observed": observed.into(), "bound": bound.into(), "status": "informational" }));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    /// Keys of the failed hard assertions.
    pub fn failures(&self) -> Vec<&str> {
        self.bounds
            .iter()
            .filter(|(_, v)| v.get("status").and_then(Value::as_str) == Some("fail"))
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_order_is_fixed() {
        let mut r = Report::new("demo").with_seed(3);
        r.param("k", 9).value("x", 1.5).hard("cap", 2, 3, true).info("asym", 0.5, 0.1).note("ok");
        let text = r.to_json();
        let keys = ["\"name\"", "\"params\"", "\"seed\"", "\"values\"", "\"bounds\"", "\"hard_pass\"", "\"notes\""];
        let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(r.hard_pass && r.failures().is_empty());
    }

    #[test]
    fn failure_sticks() {
        let mut r = Report::new("demo");
        r.hard("a", 5, 3, false).hard("a", 1, 3, true);
        assert!(!r.hard_pass);
    }
}
