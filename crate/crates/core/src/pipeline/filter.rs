//! Sequential quality filters: SSIM floor, motion floor for Medium/Hard,
//! perceptual-score ceiling, per-video near-duplicate removal, and the
//! high-frequency suppression check.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::record::SampleRecord;
use super::sidecar::Sidecar;
use crate::error::{Error, Result};
use crate::imagekit::PerceptualHash;
use crate::synthesis::Tier;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterConfig {
    pub min_ssim: f64,
    /// px/frame; applied to Medium and Hard pairs only.
    pub min_flow_medium_hard: f64,
    pub max_lpips: f64,
    /// Pairs whose sharp-frame hashes are within this Hamming distance are duplicates.
    pub dedup_hamming: u32,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            min_ssim: 0.65,
            min_flow_medium_hard: 1.0,
            max_lpips: 0.35,
            dedup_hamming: 2,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(-1.0..=1.0).contains(&self.min_ssim) {
            return Err(Error::Config(format!("min_ssim {} outside [-1, 1]", self.min_ssim)));
        }
        if !(self.min_flow_medium_hard >= 0.0) {
            return Err(Error::Config(format!("min_flow_medium_hard {} is negative", self.min_flow_medium_hard)));
        }
        if !(self.max_lpips >= 0.0) {
            return Err(Error::Config(format!("max_lpips {} is negative", self.max_lpips)));
        }
        if self.dedup_hamming > 64 {
            return Err(Error::Config(format!("dedup_hamming {} exceeds 64 bits", self.dedup_hamming)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Synthesis,
    Ssim,
    Motion,
    Perceptual,
    Dedup,
    Isp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Applied,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageLog {
    pub stage: Stage,
    pub status: StageStatus,
    pub input: usize,
    pub rejected: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// One dropped pair and why.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub video: String,
    pub img_num: usize,
    pub stage: Stage,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

impl Rejection {
    fn of(r: &SampleRecord, stage: Stage, reason: String, value: Option<f64>) -> Self {
        Self {
            video: r.video.clone(),
            img_num: r.img_num,
            stage,
            reason,
            value,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilterOutcome {
    pub kept: Vec<SampleRecord>,
    pub stages: Vec<StageLog>,
    pub rejections: Vec<Rejection>,
}

fn run_stage(
    records: Vec<SampleRecord>,
    stage: Stage,
    stages: &mut Vec<StageLog>,
    rejections: &mut Vec<Rejection>,
    mut verdict: impl FnMut(&SampleRecord) -> Option<(String, Option<f64>)>,
) -> Vec<SampleRecord> {
    let input = records.len();
    let before = rejections.len();
    let kept: Vec<SampleRecord> = records
        .into_iter()
        .filter(|r| match verdict(r) {
            Some((reason, value)) => {
                rejections.push(Rejection::of(r, stage, reason, value));
                false
            }
            None => true,
        })
        .collect();
    stages.push(StageLog {
        stage,
        status: StageStatus::Applied,
        input,
        rejected: rejections.len() - before,
        warning: None,
    });
    kept
}

/// Applies the four filters strictly in order: SSIM, motion (Medium/Hard),
/// perceptual score (only with a sidecar; skipped with a warning otherwise),
/// near-duplicates. Sidecar scores are copied into the kept records.
pub fn filter_pairs(
    records: Vec<SampleRecord>,
    config: &FilterConfig,
    sidecar: Option<&Sidecar>,
) -> Result<FilterOutcome> {
    config.validate()?;
    if let Some(sc) = sidecar {
        let ids: BTreeSet<u64> = records.iter().map(|r| r.img_id).collect();
        if let Some(unknown) = sc.scores.keys().find(|id| !ids.contains(id)) {
            return Err(Error::Input(format!("sidecar scores unknown img_id {unknown}")));
        }
    }

    let mut stages = Vec::new();
    let mut rejections = Vec::new();

    let kept = run_stage(records, Stage::Ssim, &mut stages, &mut rejections, |r| {
        (r.ssim < config.min_ssim).then(|| (format!("ssim {:.4} < {}", r.ssim, config.min_ssim), Some(r.ssim)))
    });

    let kept = run_stage(kept, Stage::Motion, &mut stages, &mut rejections, |r| {
        (r.difficulty != Tier::Easy && r.motion < config.min_flow_medium_hard).then(|| {
            (
                format!(
                    "{} pair with motion {:.3} px/frame < {}",
                    r.difficulty, r.motion, config.min_flow_medium_hard
                ),
                Some(r.motion),
            )
        })
    });

    let kept = match sidecar {
        Some(sc) => {
            let mut kept = kept;
            let mut unscored = 0usize;
            for r in &mut kept {
                match sc.get(r.img_id) {
                    Some(score) => r.lpips = Some(score),
                    None => unscored += 1,
                }
            }
            let kept = run_stage(kept, Stage::Perceptual, &mut stages, &mut rejections, |r| {
                sc.get(r.img_id)
                    .filter(|&s| s > config.max_lpips)
                    .map(|s| (format!("lpips {s:.4} > {}", config.max_lpips), Some(s)))
            });
            if unscored > 0 {
                let msg = format!("{unscored} records have no sidecar score and were kept unchecked");
                log::warn!("perceptual filter: {msg}");
                stages.last_mut().expect("stage just ran").warning = Some(msg);
            }
            kept
        }
        None => {
            let msg = "no perceptual-score sidecar supplied; perceptual filter skipped".to_string();
            log::warn!("{msg}");
            stages.push(StageLog {
                stage: Stage::Perceptual,
                status: StageStatus::Skipped,
                input: kept.len(),
                rejected: 0,
                warning: Some(msg),
            });
            kept
        }
    };

    let input = kept.len();
    let (kept, dropped) = dedup(kept, config.dedup_hamming);
    stages.push(StageLog {
        stage: Stage::Dedup,
        status: StageStatus::Applied,
        input,
        rejected: dropped.len(),
        warning: None,
    });
    rejections.extend(dropped);

    Ok(FilterOutcome {
        kept,
        stages,
        rejections,
    })
}

/// Scans in `(video, img_num)` order and drops any pair whose sharp-frame hash
/// is within `threshold` of an already-kept pair from the same video.
pub fn dedup(mut records: Vec<SampleRecord>, threshold: u32) -> (Vec<SampleRecord>, Vec<Rejection>) {
    records.sort_by(|a, b| a.key().cmp(&b.key()));
    let mut seen: BTreeMap<String, Vec<(usize, PerceptualHash)>> = BTreeMap::new();
    let mut kept = Vec::with_capacity(records.len());
    let mut dropped = Vec::new();
    for r in records {
        let prior = seen.entry(r.video.clone()).or_default();
        match prior.iter().find(|(_, h)| h.distance(r.phash) <= threshold) {
            Some(&(num, h)) => {
                let d = h.distance(r.phash);
                dropped.push(Rejection::of(
                    &r,
                    Stage::Dedup,
                    format!("near-duplicate of frame {num} (hamming {d} <= {threshold})"),
                    Some(d as f64),
                ));
            }
            None => {
                prior.push((r.img_num, r.phash));
                kept.push(r);
            }
        }
    }
    (kept, dropped)
}

/// Passes iff the sharp frame carries strictly more high-frequency energy than the blur.
pub fn isp_check(record: &SampleRecord) -> bool {
    record.isp_sharp > record.isp_blur
}

pub fn isp_validate(records: Vec<SampleRecord>) -> (Vec<SampleRecord>, StageLog, Vec<Rejection>) {
    let mut stages = Vec::new();
    let mut rejections = Vec::new();
    let kept = run_stage(records, Stage::Isp, &mut stages, &mut rejections, |r| {
        (!isp_check(r)).then(|| {
            (
                format!("sharp energy {:.4} does not exceed blur energy {:.4}", r.isp_sharp, r.isp_blur),
                Some(r.isp_sharp - r.isp_blur),
            )
        })
    });
    (kept, stages.pop().expect("one stage"), rejections)
}
