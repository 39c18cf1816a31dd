//! Record parsing (JSON Lines or CSV) and fixed-precision output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{Basis, Superbase, Vec2};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub id: String,
    pub basis: [[f64; 2]; 2],
}

impl LatticeRecord {
    pub fn new(id: impl Into<String>, basis: [[f64; 2]; 2]) -> Self {
        LatticeRecord {
            id: id.into(),
            basis,
        }
    }

    pub fn to_basis(&self) -> Result<Basis> {
        Basis::from_rows(self.basis)
    }
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    id: String,
    v1x: f64,
    v1y: f64,
    v2x: f64,
    v2y: f64,
}

/// A parsed record, or the reason a line could not be parsed together with a
/// best-effort identifier.
pub type ParsedRecord = std::result::Result<LatticeRecord, (String, String)>;

/// Parses JSON Lines when the first non-blank character is `{`, otherwise CSV
/// with the header `id,v1x,v1y,v2x,v2y`.
pub fn parse_records(text: &str) -> Vec<ParsedRecord> {
    if text.trim_start().starts_with('{') {
        parse_jsonl(text)
    } else {
        parse_csv(text)
    }
}

fn parse_jsonl(text: &str) -> Vec<ParsedRecord> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            serde_json::from_str::<LatticeRecord>(l).map_err(|e| {
                let id = serde_json::from_str::<serde_json::Value>(l)
                    .ok()
                    .and_then(|v| v.get("id").and_then(|i| i.as_str()).map(str::to_owned))
                    .unwrap_or_else(|| format!("line {}", n + 1));
                (id, e.to_string())
            })
        })
        .collect()
}

fn parse_csv(text: &str) -> Vec<ParsedRecord> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    rdr.deserialize::<CsvRow>()
        .enumerate()
        .map(|(n, r)| {
            r.map(|r| LatticeRecord::new(r.id, [[r.v1x, r.v1y], [r.v2x, r.v2y]]))
                .map_err(|e| (format!("row {}", n + 1), e.to_string()))
        })
        .collect()
}

/// Real number with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_owned()
    }
}

pub fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn array(items: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = items.into_iter().collect();
    format!("[{}]", items.join(","))
}

pub fn nums(xs: &[f64]) -> String {
    array(xs.iter().map(|&x| num(x)))
}

pub fn vec2(v: Vec2) -> String {
    nums(&[v.x, v.y])
}

pub fn superbase(s: &Superbase) -> String {
    array(s.vectors().into_iter().map(vec2))
}

pub fn basis(b: &Basis) -> String {
    array([vec2(b.v1), vec2(b.v2)])
}

/// JSON object from already-encoded values, keeping field order.
pub fn object(fields: &[(&str, String)]) -> String {
    let mut out = String::from("{");
    for (i, (k, v)) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}:{}", string(k), v);
    }
    out.push('}');
    out
}

pub fn emit_record(r: &LatticeRecord) -> String {
    object(&[
        ("id", string(&r.id)),
        ("basis", array(r.basis.iter().map(|row| nums(row)))),
    ])
}
