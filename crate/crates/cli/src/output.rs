//! Result documents and their canonical serialization.
//!
//! Canonical form: object keys sorted, integers verbatim, every other number
//! in exponent notation with 17 significant digits so that `f64` values
//! survive a round trip bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use formleb::{Complex64, ComplexMatrix, ComplexMeasure};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub type Pair = [f64; 2];
pub type MatrixRows = Vec<Vec<Pair>>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    #[default]
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultOutput {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_sha256: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, MatrixRows>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measures: BTreeMap<String, Vec<Pair>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
}

impl ResultOutput {
    pub fn ok(kind: &str) -> Self {
        ResultOutput {
            kind: Some(kind.to_string()),
            ..Default::default()
        }
    }

    pub fn failure(kind: Option<&str>, err: &CliError) -> Self {
        ResultOutput {
            status: Status::Error,
            error: Some(ErrorInfo {
                code: err.code.clone(),
                message: err.message.clone(),
                path: err.path.clone(),
            }),
            kind: kind.map(str::to_string),
            ..Default::default()
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn matrix(&mut self, name: &str, m: &ComplexMatrix) -> &mut Self {
        self.matrices.insert(name.to_string(), encode_matrix(m));
        self
    }

    pub fn measure(&mut self, name: &str, mu: &ComplexMeasure) -> &mut Self {
        self.measures.insert(
            name.to_string(),
            mu.values().iter().map(|z| pair(*z)).collect(),
        );
        self
    }

    pub fn flag(&mut self, name: &str, value: bool) -> &mut Self {
        self.flags.insert(name.to_string(), value);
        self
    }

    /// Records a diagnostic; non-finite values are dropped since JSON cannot carry them.
    pub fn diagnostic(&mut self, name: &str, value: f64) -> &mut Self {
        if value.is_finite() {
            self.diagnostics.insert(name.to_string(), value);
        }
        self
    }

    pub fn count(&mut self, name: &str, value: usize) -> &mut Self {
        self.counts.insert(name.to_string(), value as u64);
        self
    }

    pub fn label_list(&mut self, name: &str, labels: Vec<String>) -> &mut Self {
        self.labels.insert(name.to_string(), labels);
        self
    }
}

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn encode_matrix(m: &ComplexMatrix) -> MatrixRows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

/// Inverse of [`encode_matrix`]; `None` if the rows are ragged.
pub fn decode_matrix(rows: &MatrixRows) -> Option<ComplexMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return None;
    }
    Some(ComplexMatrix::from_fn(n, m, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

/// Canonical JSON bytes for `r`, newline-terminated.
pub fn emit_output(r: &ResultOutput, pretty: bool) -> Vec<u8> {
    let value = serde_json::to_value(r).expect("result documents are always representable");
    let mut out = String::new();
    write_value(&value, pretty, 0, &mut out);
    out.push('\n');
    out.into_bytes()
}

pub fn parse_output(bytes: &[u8]) -> Result<ResultOutput, serde_json::Error> {
    serde_json::from_slice(bytes)
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn indent(out: &mut String, depth: usize) {
    out.push('\n');
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, pretty: bool, depth: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_u64() || n.is_i64() {
                out.push_str(&n.to_string());
            } else {
                let x = n.as_f64().expect("JSON numbers are f64-representable");
                write!(out, "{x:.16e}").expect("writing to a String");
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            // Rows of scalars stay on one line even in pretty mode.
            let inline = !pretty || items.iter().all(is_scalar);
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                    if inline && pretty {
                        out.push(' ');
                    }
                }
                if !inline {
                    indent(out, depth + 1);
                }
                write_value(item, pretty, depth + 1, out);
            }
            if !inline && !items.is_empty() {
                indent(out, depth);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            for (i, key) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if pretty {
                    indent(out, depth + 1);
                }
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push(':');
                if pretty {
                    out.push(' ');
                }
                write_value(&map[*key], pretty, depth + 1, out);
            }
            if pretty && !map.is_empty() {
                indent(out, depth);
            }
            out.push('}');
        }
    }
}
