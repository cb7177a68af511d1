//! Report envelope, check records and the JSON schema they follow.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One named comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub residual_degree: Option<i64>,
}

impl CheckReport {
    pub fn new(name: String, ok: bool, lhs: String, rhs: String, residual_degree: Option<i64>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        // an exact match carries the zero-series sentinel; report it as absent
        let residual_degree = residual_degree.filter(|&d| d > i64::MIN / 8);
        CheckReport { name, status, lhs, rhs, residual_degree }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// The document written for every run.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub command: String,
    pub field: FieldInfo,
    pub precision: Option<i64>,
    pub cutoff: Option<u64>,
    pub seed: u64,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    pub result: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
}

/// A failure document: printed instead of an envelope when a command
/// cannot run.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub command: Option<String>,
    pub error: String,
    pub class: &'static str,
    pub exit_code: i32,
}

/// JSON Schema (draft 2020-12) for [`Envelope`] and [`ErrorReport`].
pub fn report_schema() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "ffl report",
        "oneOf": [{ "$ref": "#/$defs/envelope" }, { "$ref": "#/$defs/error" }],
        "$defs": {
            "coefficient": {
                "oneOf": [
                    { "type": "integer", "minimum": 0 },
                    { "type": "array", "items": { "type": "integer", "minimum": 0 } }
                ]
            },
            "poly": { "type": "array", "items": { "$ref": "#/$defs/coefficient" } },
            "laurent": {
                "type": "object",
                "required": ["top_exponent", "coefficients", "precision"],
                "additionalProperties": false,
                "properties": {
                    "top_exponent": { "type": ["integer", "null"] },
                    "coefficients": { "type": "array", "items": { "$ref": "#/$defs/coefficient" } },
                    "precision": { "type": ["integer", "null"] }
                }
            },
            "check": {
                "type": "object",
                "required": ["name", "status", "lhs", "rhs", "residual_degree"],
                "additionalProperties": false,
                "properties": {
                    "name": { "type": "string" },
                    "status": { "enum": ["pass", "fail"] },
                    "lhs": { "type": "string" },
                    "rhs": { "type": "string" },
                    "residual_degree": { "type": ["integer", "null"] }
                }
            },
            "field": {
                "type": "object",
                "required": ["p", "m", "q", "modulus"],
                "properties": {
                    "p": { "type": "integer" },
                    "m": { "type": "integer" },
                    "q": { "type": "integer" },
                    "modulus": { "type": "array", "items": { "type": "integer" } }
                }
            },
            "regulator": {
                "type": "object",
                "required": ["kind", "pipeline", "value", "gamma", "precision"],
                "additionalProperties": false,
                "properties": {
                    "kind": { "enum": ["tensor2", "sym2", "alt2"] },
                    "pipeline": { "enum": ["closed_form", "basis"] },
                    "value": { "$ref": "#/$defs/laurent" },
                    "gamma": { "type": "integer", "minimum": 1 },
                    "precision": { "type": "integer" }
                }
            },
            "regulator_result": {
                "type": "object",
                "required": ["kind", "closed_form", "basis"],
                "properties": {
                    "kind": { "enum": ["tensor2", "sym2", "alt2"] },
                    "closed_form": { "oneOf": [{ "type": "null" }, { "$ref": "#/$defs/regulator" }] },
                    "basis": { "oneOf": [{ "type": "null" }, { "$ref": "#/$defs/regulator" }] }
                }
            },
            "charpoly_result": {
                "type": "object",
                "required": ["f", "degree", "rank", "p", "p_display", "c_f", "chi", "q", "q_dual_fx", "order_oracle"],
                "properties": {
                    "f": { "$ref": "#/$defs/poly" },
                    "degree": { "type": "integer", "minimum": 1 },
                    "rank": { "type": "integer", "minimum": 1 },
                    "p": { "type": "array", "items": { "$ref": "#/$defs/poly" } },
                    "p_display": { "type": "string" },
                    "c_f": { "type": "integer" },
                    "chi": { "type": "integer" },
                    "q": { "type": "array", "items": { "$ref": "#/$defs/poly" } },
                    "q_dual_fx": { "type": "array", "items": { "$ref": "#/$defs/poly" } },
                    "order_oracle": { "$ref": "#/$defs/poly" }
                }
            },
            "series_result": {
                "type": "object",
                "required": ["value"],
                "properties": { "value": { "$ref": "#/$defs/laurent" } }
            },
            "envelope": {
                "type": "object",
                "allOf": [
                    {
                        "if": { "properties": { "command": { "const": "regulator" } } },
                        "then": { "properties": { "result": { "$ref": "#/$defs/regulator_result" } } }
                    },
                    {
                        "if": { "properties": { "command": { "const": "charpoly" } } },
                        "then": { "properties": { "result": { "$ref": "#/$defs/charpoly_result" } } }
                    },
                    {
                        "if": { "properties": { "command": { "enum": ["lvalue", "special-value"] } } },
                        "then": { "properties": { "result": { "$ref": "#/$defs/series_result" } } }
                    }
                ],
                "required": ["command", "field", "precision", "cutoff", "seed", "status", "checks", "result"],
                "additionalProperties": false,
                "properties": {
                    "command": { "type": "string" },
                    "field": { "$ref": "#/$defs/field" },
                    "precision": { "type": ["integer", "null"] },
                    "cutoff": { "type": ["integer", "null"], "minimum": 0 },
                    "seed": { "type": "integer", "minimum": 0 },
                    "status": { "enum": ["pass", "fail"] },
                    "checks": { "type": "array", "items": { "$ref": "#/$defs/check" } },
                    "result": {}
                }
            },
            "error": {
                "type": "object",
                "required": ["command", "error", "class", "exit_code"],
                "additionalProperties": false,
                "properties": {
                    "command": { "type": ["string", "null"] },
                    "error": { "type": "string" },
                    "class": { "enum": ["config", "guard", "internal"] },
                    "exit_code": { "enum": [2, 3, 4] }
                }
            }
        }
    })
}
