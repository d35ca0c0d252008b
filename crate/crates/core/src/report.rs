//! Check reports and their JSON schema.
//!
//! Every suite produces a flat list of [`Check`] records. A check carries a
//! stable identifier naming the verified identity, the instance indices it
//! was applied to, and on failure a witness pinpointing the first
//! disagreement. Reports serialize deterministically: struct field order is
//! fixed, map keys are sorted, and all rational values are `"p/q"` strings -
//! a float literal anywhere makes a report invalid.

use crate::exact::Rat;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

/// One verified identity instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    /// Stable identifier of the identity, e.g. `"T-quadratic"` or
    /// `"lemma:commutator-product"`.
    pub id: String,
    /// Indices instantiating the identity (generator subscripts, pair
    /// labels), empty when the identity has a single instance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub instance: Vec<i64>,
    /// Trial number for randomized suites.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn passing(id: impl Into<String>, instance: Vec<i64>) -> Self {
        Check {
            id: id.into(),
            instance,
            trial: None,
            pass: true,
            witness: None,
        }
    }

    pub fn failing(id: impl Into<String>, instance: Vec<i64>, witness: Value) -> Self {
        Check {
            id: id.into(),
            instance,
            trial: None,
            pass: false,
            witness: Some(witness),
        }
    }

    pub fn with_trial(mut self, trial: u64) -> Self {
        self.trial = Some(trial);
        self
    }
}

/// Witness for a failed matrix identity: the first entry where the two
/// sides differ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryWitness {
    pub row: usize,
    pub col: usize,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl EntryWitness {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("witness serializes")
    }
}

/// A full report: the suite name, the configuration echo, and every check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub subcommand: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(subcommand: impl Into<String>, params: Value, checks: Vec<Check>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            subcommand: subcommand.into(),
            params,
            checks,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Canonical serialized form: pretty JSON with a trailing newline.
    /// Identical configurations produce byte-identical output.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Validates a report file against the schema: required fields with the
/// right shapes, no float literal anywhere, and every string that claims to
/// be a rational parseable as one.
pub fn report_schema_validate(path: &Path) -> bool {
    let Ok(text) = std::fs::read_to_string(path) else {
        return false;
    };
    let Ok(value) = serde_json::from_str::<Value>(&text) else {
        return false;
    };
    validate_report_value(&value)
}

pub fn validate_report_value(value: &Value) -> bool {
    if contains_float(value) {
        return false;
    }
    let Some(obj) = value.as_object() else {
        return false;
    };
    let has_shape = obj.get("subcommand").is_some_and(Value::is_string)
        && obj.get("params").is_some_and(Value::is_object)
        && obj.get("pass").is_some_and(Value::is_boolean)
        && obj.get("checks").is_some_and(Value::is_array);
    if !has_shape {
        return false;
    }
    let checks = obj["checks"].as_array().expect("checked above");
    let checks_ok = checks.iter().all(|c| {
        let Some(c) = c.as_object() else {
            return false;
        };
        let id_ok = c.get("id").is_some_and(Value::is_string);
        let pass_ok = c.get("pass").is_some_and(Value::is_boolean);
        let instance_ok = c
            .get("instance")
            .is_none_or(|v| v.as_array().is_some_and(|a| a.iter().all(Value::is_i64)));
        id_ok && pass_ok && instance_ok
    });
    if !checks_ok {
        return false;
    }
    // The aggregate flag must match the per-check verdicts.
    let all_pass = checks.iter().all(|c| c["pass"].as_bool() == Some(true));
    if obj["pass"].as_bool() != Some(all_pass) {
        return false;
    }
    rational_strings_parse(value)
}

fn contains_float(value: &Value) -> bool {
    match value {
        Value::Number(n) => !n.is_i64() && !n.is_u64(),
        Value::Array(items) => items.iter().any(contains_float),
        Value::Object(map) => map.values().any(contains_float),
        _ => false,
    }
}

/// Any string shaped like `p/q` (or `-p/q`) must be a valid rational; this
/// catches corrupted values such as `"1/0"` in hand-edited reports.
fn rational_strings_parse(value: &Value) -> bool {
    match value {
        Value::String(s) => {
            if s.contains('/') && s.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-') {
                s.parse::<Rat>().is_ok()
            } else {
                true
            }
        }
        Value::Array(items) => items.iter().all(rational_strings_parse),
        Value::Object(map) => map.values().all(rational_strings_parse),
        _ => true,
    }
}
