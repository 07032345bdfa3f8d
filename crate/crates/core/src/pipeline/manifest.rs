//! JSON-Lines manifest: one provenance header line, then one record per line.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::filter::{FilterConfig, Rejection, StageLog};
use super::record::{SampleRecord, Split};
use super::split::SplitConfig;
use crate::error::{Error, Result};
use crate::flow::FlowParams;
use crate::synthesis::{CandidatePolicy, EpsilonMode, TargetRange};

/// Value of the header's `kind` field; identifies a file as a manifest.
pub const MANIFEST_KIND: &str = "tierblur-manifest";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RejectionLog {
    #[serde(default)]
    pub stages: Vec<StageLog>,
    #[serde(default)]
    pub rejections: Vec<Rejection>,
}

impl RejectionLog {
    pub fn extend(&mut self, stages: impl IntoIterator<Item = StageLog>, rejections: impl IntoIterator<Item = Rejection>) {
        self.stages.extend(stages);
        self.rejections.extend(rejections);
    }
}

/// Everything needed to reproduce a build: parameters, seed, and what was dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: String,
    pub tool_version: String,
    pub seed: u64,
    #[serde(default)]
    pub flow: FlowParams,
    #[serde(default)]
    pub candidates: CandidatePolicy,
    #[serde(default = "TargetRange::defaults")]
    pub targets: Vec<TargetRange>,
    #[serde(default)]
    pub epsilon_mode: EpsilonMode,
    #[serde(default)]
    pub filter: FilterConfig,
    #[serde(default)]
    pub split: SplitConfig,
    /// Header line of the perceptual-score sidecar, when one was applied.
    #[serde(default)]
    pub sidecar: Option<Value>,
    #[serde(default)]
    pub rejection_log: RejectionLog,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

impl Provenance {
    pub fn new(seed: u64) -> Self {
        Self {
            kind: MANIFEST_KIND.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            flow: FlowParams::default(),
            candidates: CandidatePolicy::default(),
            targets: TargetRange::defaults(),
            epsilon_mode: EpsilonMode::default(),
            filter: FilterConfig::default(),
            split: SplitConfig::default(),
            sidecar: None,
            rejection_log: RejectionLog::default(),
            extra: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub provenance: Provenance,
    pub records: Vec<SampleRecord>,
}

impl Manifest {
    /// Checks dense ids from 0, per-record invariants and train/test leakage.
    pub fn validate(&self) -> Result<()> {
        for (i, r) in self.records.iter().enumerate() {
            if r.img_id != i as u64 {
                return Err(Error::Input(format!("img_id {} at position {i}; ids must be dense from 0", r.img_id)));
            }
            r.validate()?;
        }
        let mut sides: BTreeMap<&str, BTreeSet<Split>> = BTreeMap::new();
        for r in &self.records {
            sides.entry(&r.video).or_default().insert(r.split);
        }
        if let Some((video, _)) = sides
            .iter()
            .find(|(_, s)| s.contains(&Split::Train) && s.contains(&Split::Test))
        {
            return Err(Error::Split(format!("video {video} appears in both train and test")));
        }
        Ok(())
    }

    /// Renumbers `img_id` densely in current record order.
    pub fn renumber(&mut self) {
        for (i, r) in self.records.iter_mut().enumerate() {
            r.img_id = i as u64;
        }
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = serde_json::to_string(&self.provenance)?;
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (i, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty manifest".into(),
        })?;
        let provenance: Provenance = serde_json::from_str(header).map_err(|e| Error::Parse {
            line: i + 1,
            message: format!("provenance header: {e}"),
        })?;
        if provenance.kind != MANIFEST_KIND {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("header kind {:?} is not {MANIFEST_KIND:?}", provenance.kind),
            });
        }
        let records = lines
            .map(|(i, line)| {
                serde_json::from_str(line).map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<SampleRecord>>>()?;
        Ok(Self { provenance, records })
    }
}

/// Validates, then writes through a temporary file so readers never see a partial manifest.
pub fn emit_manifest(manifest: &Manifest, path: &Path) -> Result<()> {
    manifest.validate()?;
    let text = manifest.to_jsonl()?;
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("jsonl.tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    Manifest::parse(&fs::read_to_string(path)?)
}
