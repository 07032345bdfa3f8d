//! End-to-end construction: candidates, synthesis, measurement, filtering,
//! suppression check, split, image tree and manifest.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::filter::{filter_pairs, isp_validate, Rejection, Stage, StageLog, StageStatus};
use super::layout::{relayout, resolve_path as resolve};
use super::manifest::{emit_manifest, Manifest, Provenance};
use super::record::{assign_tier, SampleRecord, Split};
use super::sidecar::load_sidecar;
use super::split::split_videos;
use crate::config::BuildConfig;
use crate::error::{Error, Result};
use crate::flow::window_motion;
use crate::frames::{DirectoryFrames, FrameSource};
use crate::imagekit::{io, laplacian_energy, laplacian_variance, phash, rms_contrast, ssim};
use crate::synthesis::{select_candidates, synthesize_pair, TargetRange};

const STAGING: &str = ".staging";
const MANIFEST_FILE: &str = "manifest.jsonl";
/// Top-level entries of the output root owned, and cleared, by a build.
const OWNED: [&str; 5] = ["train", "test", "unassigned", STAGING, MANIFEST_FILE];

#[derive(Clone, Debug, PartialEq)]
pub struct BuildSummary {
    pub manifest_path: PathBuf,
    pub videos: usize,
    pub candidates: usize,
    pub synthesized: usize,
    pub kept: usize,
    pub tiers: [usize; 3],
    pub train_videos: Vec<String>,
    pub test_videos: Vec<String>,
    pub stages: Vec<StageLog>,
    pub warnings: Vec<String>,
}

/// Frame directories under the given roots, named by directory, sorted by name.
///
/// A root holding numbered frames is itself one video; otherwise each of its
/// subdirectories holding numbered frames is a video.
pub fn discover_videos(roots: &[PathBuf]) -> Result<Vec<(String, DirectoryFrames)>> {
    let mut videos = Vec::new();
    for root in roots {
        let direct = DirectoryFrames::open(root)?;
        if !direct.is_empty() {
            videos.push((dir_name(root)?, direct));
            continue;
        }
        let mut subdirs: Vec<PathBuf> = fs::read_dir(root)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        subdirs.retain(|p| p.is_dir());
        subdirs.sort();
        for dir in subdirs {
            let frames = DirectoryFrames::open(&dir)?;
            if frames.is_empty() {
                log::debug!("{} holds no numbered frames", dir.display());
                continue;
            }
            videos.push((dir_name(&dir)?, frames));
        }
    }
    videos.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = videos.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Config(format!("video name {:?} occurs under more than one root", w[0].0)));
    }
    Ok(videos)
}

fn dir_name(path: &Path) -> Result<String> {
    let canonical = path.canonicalize()?;
    canonical
        .file_name()
        .and_then(|n| n.to_str())
        .map(str::to_string)
        .ok_or_else(|| Error::Input(format!("cannot name video at {}", path.display())))
}

struct Job<'a> {
    video: &'a str,
    frames: &'a DirectoryFrames,
    center: usize,
    target: TargetRange,
}

fn staged(role: &str, video: &str, img_num: usize) -> String {
    format!("{STAGING}/{role}/{video}_{img_num}.png")
}

fn synthesize_record(job: &Job<'_>, config: &BuildConfig, root: &Path) -> Result<std::result::Result<SampleRecord, Rejection>> {
    let reject = |reason: String, value: Option<f64>| {
        Ok(Err(Rejection {
            video: job.video.to_string(),
            img_num: job.center,
            stage: Stage::Synthesis,
            reason,
            value,
        }))
    };
    let result = match synthesize_pair(job.frames, job.center, &job.target, config.epsilon_mode) {
        Ok(r) => r,
        Err(Error::DegenerateScene) => return reject("every window reproduces the centre frame".into(), None),
        Err(Error::Bounds { .. }) => return reject("no window fits the sequence".into(), None),
        Err(e) => return Err(e),
    };
    let floor = config.psnr_floor();
    if result.achieved_psnr < floor {
        return reject(
            format!("achieved psnr {:.3} below the {floor} dB floor", result.achieved_psnr),
            Some(result.achieved_psnr),
        );
    }
    let isp_sharp = laplacian_energy(&result.sharp);
    let isp_blur = laplacian_energy(&result.blur);
    let blur_path = staged("blur", job.video, job.center);
    let sharp_path = staged("sharp", job.video, job.center);
    io::save(&result.blur, &resolve(root, &blur_path))?;
    io::save(&result.sharp, &resolve(root, &sharp_path))?;
    Ok(Ok(SampleRecord {
        img_id: 0,
        video: job.video.to_string(),
        img_num: job.center,
        psnr: result.achieved_psnr,
        ssim: ssim(&result.blur, &result.sharp)?,
        lpips: None,
        motion: window_motion(job.frames, result.t_s, result.t_e, &config.flow)?,
        sharpness: laplacian_variance(&result.sharp),
        contrast: rms_contrast(&result.sharp),
        isp_sharp,
        isp_blur,
        isp_diff: isp_sharp - isp_blur,
        blur_window: result.window_size,
        difficulty: assign_tier(result.achieved_psnr)?,
        split: Split::Unassigned,
        t_s: result.t_s,
        t_e: result.t_e,
        target_tier: result.target.tier,
        target_p_min: result.target.p_min,
        target_p_max: result.target.p_max,
        epsilon: result.epsilon,
        phash: phash(&result.sharp),
        blur_path,
        sharp_path,
        extra: Default::default(),
    }))
}

/// Runs the whole pipeline and writes `<output>/manifest.jsonl` plus the image tree.
///
/// Within a video the k-th candidate (in frame order) targets the k-th range
/// cyclically, Easy, Medium, Hard. Results are merged in `(video, img_num)`
/// order before any stateful stage, so the manifest is independent of the
/// thread count.
///
/// A sidecar, when given, must score the manifest this configuration yields
/// without one: the perceptual stage is then applied to that manifest's ids
/// and the split is recomputed over the survivors.
pub fn build_dataset(config: &BuildConfig) -> Result<BuildSummary> {
    config.validate()?;
    config.validate_paths()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run(config))
}

fn run(config: &BuildConfig) -> Result<BuildSummary> {
    let root = config.output.as_path();
    prepare_output(root)?;
    let mut warnings = Vec::new();
    let mut warn = |msg: String| {
        log::warn!("{msg}");
        warnings.push(msg);
    };

    let videos = discover_videos(&config.inputs)?;
    if videos.is_empty() {
        warn("no frame sequences found under the input roots".into());
    }
    let targets = config.ordered_targets();
    let mut jobs = Vec::new();
    for (name, frames) in &videos {
        let centers = if frames.len() < 3 {
            warn(format!("video {name} has {} frames, fewer than 3; skipped", frames.len()));
            Vec::new()
        } else {
            select_candidates(frames, &config.candidates)?
        };
        log::info!("{name}: {} frames, {} candidates", frames.len(), centers.len());
        for (k, center) in centers.into_iter().enumerate() {
            jobs.push(Job {
                video: name,
                frames,
                center,
                target: targets[k % targets.len()],
            });
        }
    }

    let outcomes = jobs
        .par_iter()
        .map(|job| synthesize_record(job, config, root))
        .collect::<Result<Vec<_>>>()?;
    let mut records = Vec::new();
    let mut synthesis_rejections = Vec::new();
    for o in outcomes {
        match o {
            Ok(r) => records.push(r),
            Err(rej) => synthesis_rejections.push(rej),
        }
    }
    let mut stages = vec![StageLog {
        stage: Stage::Synthesis,
        status: StageStatus::Applied,
        input: jobs.len(),
        rejected: synthesis_rejections.len(),
        warning: None,
    }];
    let synthesized = records.len();
    records.sort_by(|a, b| a.key().cmp(&b.key()));
    provisional_ids(&mut records);

    let filtered = filter_pairs(records, &config.filter, None)?;
    let mut rejections = synthesis_rejections;
    stages.extend(filtered.stages);
    rejections.extend(filtered.rejections);
    let (mut kept, isp_log, isp_rejections) = isp_validate(filtered.kept);
    stages.push(isp_log);
    rejections.extend(isp_rejections);
    kept.sort_by(|a, b| a.key().cmp(&b.key()));
    provisional_ids(&mut kept);

    let mut sidecar_header = None;
    if let Some(path) = &config.sidecar {
        let sidecar = load_sidecar(path)?;
        let pass = filter_pairs(kept, &config.filter, Some(&sidecar))?;
        let perceptual = pass
            .stages
            .into_iter()
            .find(|s| s.stage == Stage::Perceptual)
            .expect("perceptual stage always logged");
        stages.retain(|s| s.stage != Stage::Perceptual);
        let at = stages.iter().position(|s| s.stage == Stage::Dedup).unwrap_or(stages.len());
        stages.insert(at, perceptual);
        rejections.extend(pass.rejections);
        kept = pass.kept;
        sidecar_header = Some(sidecar.header.unwrap_or(serde_json::Value::Null));
    }

    let distinct: BTreeSet<&str> = kept.iter().map(|r| r.video.as_str()).collect();
    let (train_videos, test_videos) = if distinct.len() >= 2 {
        let outcome = split_videos(kept, &config.split, config.seed)?;
        kept = outcome.records;
        (outcome.train_videos, outcome.test_videos)
    } else {
        if !kept.is_empty() {
            warn(format!(
                "only {} video contributes pairs; records left unassigned to a split",
                distinct.len()
            ));
        }
        (Vec::new(), Vec::new())
    };
    if kept.is_empty() {
        warn("no pairs survived; writing an empty manifest".into());
    }

    for rej in &rejections {
        let name = format!("{}_{}.png", rej.video, rej.img_num);
        for role in ["blur", "sharp"] {
            let p = resolve(root, &format!("{STAGING}/{role}/{name}"));
            if p.exists() {
                fs::remove_file(p)?;
            }
        }
    }
    relayout(&mut kept, root)?;
    let staging = root.join(STAGING);
    if staging.exists() {
        fs::remove_dir_all(staging)?;
    }

    let mut provenance = Provenance::new(config.seed);
    provenance.flow = config.flow;
    provenance.candidates = config.candidates;
    provenance.targets = targets;
    provenance.epsilon_mode = config.epsilon_mode;
    provenance.filter = config.filter;
    provenance.split = config.split;
    provenance.sidecar = sidecar_header;
    provenance.rejection_log.extend(stages.clone(), rejections);
    let mut manifest = Manifest { provenance, records: kept };
    manifest.renumber();
    let manifest_path = root.join(MANIFEST_FILE);
    emit_manifest(&manifest, &manifest_path)?;

    let mut tiers = [0usize; 3];
    for r in &manifest.records {
        tiers[r.difficulty.index()] += 1;
    }
    Ok(BuildSummary {
        manifest_path,
        videos: videos.len(),
        candidates: jobs.len(),
        synthesized,
        kept: manifest.records.len(),
        tiers,
        train_videos,
        test_videos,
        stages,
        warnings,
    })
}

fn provisional_ids(records: &mut [SampleRecord]) {
    for (i, r) in records.iter_mut().enumerate() {
        r.img_id = i as u64;
    }
}

fn prepare_output(root: &Path) -> Result<()> {
    fs::create_dir_all(root)?;
    for name in OWNED {
        let p = root.join(name);
        if p.is_dir() {
            fs::remove_dir_all(&p)?;
        } else if p.exists() {
            fs::remove_file(&p)?;
        }
    }
    fs::create_dir_all(root.join(STAGING).join("blur"))?;
    fs::create_dir_all(root.join(STAGING).join("sharp"))?;
    Ok(())
}
