//! Versioned JSON reports with provenance, and their table rendering.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::arith::algebraic::AlgebraicNumber;
use crate::arith::numfield::NumberField;
use crate::arith::poly::QPoly;
use crate::arith::rational::format_rational;
use crate::config::SessionConfig;
use crate::error::{Error, Result};

pub const SCHEMA: &str = "hecke-lab/1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: CommandEcho,
    pub payload: Value,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub inputs: Vec<InputHash>,
    pub config: SessionConfig,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputHash {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl Report {
    pub fn new(name: &str, args: Vec<String>, payload: Value, inputs: Vec<InputHash>, config: SessionConfig) -> Self {
        Report {
            schema: SCHEMA,
            command: CommandEcho { name: name.into(), args },
            payload,
            provenance: Provenance { version: env!("CARGO_PKG_VERSION"), inputs, config },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// The payload as aligned text tables, followed by the provenance block.
    pub fn to_table(&self) -> String {
        let mut out = format!("hecke-lab {}\n", self.command.args.join(" "));
        out.push_str(&render_value(&self.payload, 0));
        out.push_str("\nprovenance\n");
        out.push_str(&format!("  schema: {}\n  version: {}\n", self.schema, self.provenance.version));
        for i in &self.provenance.inputs {
            out.push_str(&format!("  {} {} sha256:{}\n", i.role, i.path, i.sha256));
        }
        out
    }
}

/// Reads an input file and records its hash.
pub fn read_input(role: &str, path: &Path, inputs: &mut Vec<InputHash>) -> Result<Vec<u8>> {
    let bytes = fs::read(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    inputs.push(InputHash {
        role: role.into(),
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    });
    Ok(bytes)
}

pub fn parse_json<T: serde::de::DeserializeOwned>(role: &str, bytes: &[u8]) -> Result<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Malformed(format!("{role}: {e}")))
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Error::Malformed(format!("bad output path {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    let io = |e: std::io::Error| Error::Malformed(format!("cannot write {}: {e}", path.display()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn poly_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(format_rational(c))).collect())
}

pub fn algebraic_json(a: &AlgebraicNumber) -> Value {
    if let Some(q) = a.as_rational() {
        return Value::String(format_rational(&q));
    }
    let (re, im) = a.approx();
    serde_json::json!({
        "minpoly": poly_json(a.minpoly()),
        "root": a.index(),
        "approx": format!("{re:.6}{im:+.6}i"),
    })
}

pub fn field_json(k: &NumberField) -> Value {
    serde_json::json!({
        "label": k.label(),
        "modulus": poly_json(k.modulus()),
        "degree": crate::arith::field::Field::degree(k),
    })
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn flat_object(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.values().all(|x| scalar(x).is_some()))
}

fn cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| serde_json::to_string(v).expect("values serialize"))
}

fn render_value(v: &Value, indent: usize) -> String {
    let pad = " ".repeat(indent);
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match (scalar(x), x) {
                    (Some(s), _) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    (None, Value::Array(rows)) if !rows.is_empty() && rows.iter().all(flat_object) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        out.push_str(&render_rows(rows, indent + 2));
                    }
                    (None, _) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        out.push_str(&render_value(x, indent + 2));
                    }
                }
            }
        }
        Value::Array(items) => {
            for (n, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{n}]\n"));
                        out.push_str(&render_value(x, indent + 2));
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", cell(other))),
    }
    out
}

fn render_rows(rows: &[Value], indent: usize) -> String {
    let pad = " ".repeat(indent);
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().unwrap().keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| table.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap())
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{pad}{}\n", parts.join("  ").trim_end())
    };
    let mut out = line(cols.iter().map(String::as_str).collect());
    for r in &table {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
