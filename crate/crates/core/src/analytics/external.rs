//! Tiering an externally supplied PSNR table with the dataset's thresholds.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::pipeline::{assign_tier, MANIFEST_KIND};
use crate::synthesis::Tier;

/// One externally scored image.
#[derive(Clone, Debug, PartialEq)]
pub struct ExternalRow {
    pub id: String,
    pub psnr: f64,
}

/// Reads `(id, psnr)` rows from JSON Lines (objects carrying `psnr` and one of
/// `id`, `img_id`, `name`) or from CSV with a header naming `id` and `psnr`
/// columns. A manifest provenance header line is skipped.
pub fn parse_external(text: &str) -> Result<Vec<ExternalRow>> {
    let first = text.trim_start().chars().next();
    if first == Some('{') {
        parse_jsonl(text)
    } else {
        parse_csv(text)
    }
}

fn parse_jsonl(text: &str) -> Result<Vec<ExternalRow>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let v: Value = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        if v.get("kind").and_then(Value::as_str) == Some(MANIFEST_KIND) {
            continue;
        }
        let psnr = v
            .get("psnr")
            .and_then(Value::as_f64)
            .ok_or_else(|| err("missing numeric field `psnr`".into()))?;
        let id = ["id", "img_id", "name"]
            .iter()
            .find_map(|k| v.get(*k))
            .map(|id| match id {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .ok_or_else(|| err("missing field `id`".into()))?;
        rows.push(ExternalRow { id, psnr });
    }
    Ok(rows)
}

fn parse_csv(text: &str) -> Result<Vec<ExternalRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
        .clone();
    let column = |name: &str| {
        headers.iter().position(|h| h.eq_ignore_ascii_case(name)).ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("header lacks a `{name}` column"),
        })
    };
    let (id_col, psnr_col) = (column("id")?, column("psnr")?);
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        let psnr = rec
            .get(psnr_col)
            .unwrap_or_default()
            .parse::<f64>()
            .map_err(|e| Error::Parse { line, message: format!("psnr: {e}") })?;
        rows.push(ExternalRow {
            id: rec.get(id_col).unwrap_or_default().to_string(),
            psnr,
        });
    }
    Ok(rows)
}

/// Tier of every row, in input order.
pub fn tier_rows(rows: &[ExternalRow]) -> Result<Vec<(String, Tier)>> {
    rows.iter().map(|r| Ok((r.id.clone(), assign_tier(r.psnr)?))).collect()
}
