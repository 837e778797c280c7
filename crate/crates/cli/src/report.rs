//! Versioned machine-readable run reports.
//!
//! The JSON form is byte-deterministic for identical invocations: keys are
//! emitted in sorted order and no timing or host information is included
//! (text output is free to show timings).

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "ellog.report.v1";

pub struct RunReport {
    pub command: Vec<String>,
    pub status: &'static str,
    pub error: Option<String>,
    pub results: Value,
}

impl RunReport {
    pub fn ok(command: Vec<String>, results: Value) -> Self {
        RunReport {
            command,
            status: "ok",
            error: None,
            results,
        }
    }

    pub fn failed(command: Vec<String>, error: String, results: Value) -> Self {
        RunReport {
            command,
            status: "error",
            error: Some(error),
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(self.command));
        obj.insert("status".into(), json!(self.status));
        if let Some(e) = &self.error {
            obj.insert("error".into(), json!(e));
        }
        obj.insert("results".into(), self.results.clone());
        let mut out = serde_json::to_string_pretty(&Value::Object(obj))
            .expect("report values are plain data");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_sorted_and_stable() {
        let r = RunReport::ok(
            vec!["example".into(), "one".into()],
            json!({"z": 1, "a": {"y": 2.5, "b": "x"}}),
        );
        let one = r.to_json();
        let two = r.to_json();
        assert_eq!(one, two);
        // serde_json's default map sorts keys, so nested order is canonical.
        let a = one.find("\"a\"").unwrap();
        let z = one.find("\"z\"").unwrap();
        assert!(a < z);
        assert!(one.ends_with('\n'));
    }

    #[test]
    fn errors_carry_the_module_error_name() {
        let r = RunReport::failed(
            vec!["verify".into()],
            "UnknownCurve: builtin:37".into(),
            Value::Null,
        );
        let text = r.to_json();
        assert!(text.contains("\"status\": \"error\""));
        assert!(text.contains("UnknownCurve"));
    }
}
