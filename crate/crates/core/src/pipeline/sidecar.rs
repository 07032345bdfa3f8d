//! Perceptual-score sidecar: JSON-Lines of `{"img_id": .., "lpips": ..}`,
//! optionally preceded by one provenance line without an `img_id`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sidecar {
    pub header: Option<Value>,
    pub scores: BTreeMap<u64, f64>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    img_id: u64,
    lpips: f64,
}

impl Sidecar {
    pub fn get(&self, img_id: u64) -> Option<f64> {
        self.scores.get(&img_id).copied()
    }
}

pub fn parse_sidecar(text: &str) -> Result<Sidecar> {
    let mut sidecar = Sidecar::default();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if value.get("img_id").is_none() {
            if sidecar.header.is_none() && sidecar.scores.is_empty() {
                sidecar.header = Some(value);
                continue;
            }
            return Err(Error::Parse {
                line: line_no,
                message: "missing field `img_id`".into(),
            });
        }
        let entry: Entry = serde_json::from_value(value).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if !(entry.lpips.is_finite() && entry.lpips >= 0.0) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("lpips {} is not a finite non-negative score", entry.lpips),
            });
        }
        if sidecar.scores.insert(entry.img_id, entry.lpips).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate img_id {}", entry.img_id),
            });
        }
    }
    Ok(sidecar)
}

pub fn load_sidecar(path: &Path) -> Result<Sidecar> {
    parse_sidecar(&fs::read_to_string(path)?)
}

pub fn write_sidecar(path: &Path, sidecar: &Sidecar) -> Result<()> {
    let mut out = Vec::new();
    if let Some(h) = &sidecar.header {
        serde_json::to_writer(&mut out, h)?;
        out.push(b'\n');
    }
    for (&img_id, &lpips) in &sidecar.scores {
        serde_json::to_writer(&mut out, &Entry { img_id, lpips })?;
        out.push(b'\n');
    }
    fs::File::create(path)?.write_all(&out)?;
    Ok(())
}
