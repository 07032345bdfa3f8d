use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use tierblur::analytics::{distribution_report, parse_external, tier_rows};
use tierblur::config::BuildConfig;
use tierblur::eval::{evaluate, EvalOptions};
use tierblur::frames::DirectoryFrames;
use tierblur::imagekit::{io, phash};
use tierblur::pipeline::{
    build_dataset, emit_manifest, filter_pairs, isp_validate, load_manifest, load_sidecar, relayout, split_videos,
    Manifest, Sidecar,
};
use tierblur::synthesis::{synthesize_pair, EpsilonMode, TargetRange};

use crate::{Cli, Command, Global};

/// Exit status 2 for configuration problems, 1 for everything else.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<tierblur::Error>() {
        Some(tierblur::Error::Config(_)) => 2,
        _ => 1,
    }
}

/// Config file (when given) with global flags applied on top.
fn resolve_config(global: &Global) -> Result<BuildConfig> {
    let mut config = match &global.config {
        Some(p) => BuildConfig::load(p)?,
        None => BuildConfig::default(),
    };
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    if global.jobs.is_some() {
        config.jobs = global.jobs;
    }
    if global.sidecar.is_some() {
        config.sidecar = global.sidecar.clone();
    }
    config.validate()?;
    if let Some(jobs) = config.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().ok();
    }
    Ok(config)
}

fn sidecar(config: &BuildConfig) -> Result<Option<Sidecar>> {
    config
        .sidecar
        .as_deref()
        .map(|p| load_sidecar(p).with_context(|| format!("reading sidecar {}", p.display())))
        .transpose()
}

fn manifest_root(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    let config = resolve_config(&cli.global)?;
    match cli.command {
        Command::Build { inputs, output } => build(config, inputs, output),
        Command::Synthesize {
            frames,
            center,
            tier,
            midpoint,
            blur_out,
            sharp_out,
        } => {
            let frames = DirectoryFrames::open(&frames)?;
            let target = config
                .targets
                .iter()
                .find(|t| t.tier == tier)
                .copied()
                .unwrap_or_else(|| TargetRange::default_for(tier));
            let mode = if midpoint { EpsilonMode::Midpoint } else { config.epsilon_mode };
            let r = synthesize_pair(&frames, center, &target, mode)?;
            if let Some(p) = blur_out {
                io::save(&r.blur, &p)?;
            }
            if let Some(p) = sharp_out {
                io::save(&r.sharp, &p)?;
            }
            let trials: Vec<_> = r
                .trials
                .iter()
                .map(|t| serde_json::json!({"window": t.window, "psnr": t.psnr, "epsilon": t.epsilon}))
                .collect();
            print_json(&serde_json::json!({
                "center": r.center,
                "window_size": r.window_size,
                "t_s": r.t_s,
                "t_e": r.t_e,
                "achieved_psnr": r.achieved_psnr,
                "tier": tierblur::pipeline::assign_tier(r.achieved_psnr)?,
                "target": r.target,
                "epsilon": r.epsilon,
                "trials": trials,
            }))
        }
        Command::Filter { manifest, output } => filter(&config, &manifest, output),
        Command::Split { manifest, test_fraction } => {
            let mut config = config;
            if let Some(f) = test_fraction {
                config.split.test_fraction = f;
                config.split.validate()?;
            }
            split(&config, &manifest)
        }
        Command::Report { manifest, external, json } => match (manifest, external) {
            (_, Some(ext)) => {
                let text = fs::read_to_string(&ext).with_context(|| format!("reading {}", ext.display()))?;
                let tiers = tier_rows(&parse_external(&text)?)?;
                let mut counts = [0usize; 3];
                for (_, t) in &tiers {
                    counts[t.index()] += 1;
                }
                if json {
                    print_json(&serde_json::json!({"rows": tiers.len(), "easy": counts[0], "medium": counts[1], "hard": counts[2]}))
                } else {
                    println!("rows {}  easy {}  medium {}  hard {}", tiers.len(), counts[0], counts[1], counts[2]);
                    Ok(())
                }
            }
            (Some(m), None) => {
                let report = distribution_report(&load_manifest(&m)?)?;
                if json {
                    print_json(&report)
                } else {
                    print!("{}", report.to_text());
                    Ok(())
                }
            }
            (None, None) => bail!("report needs --manifest or --external"),
        },
        Command::Eval {
            manifest,
            restored,
            all_splits,
            json,
        } => {
            let m = load_manifest(&manifest)?;
            let sc = sidecar(&config)?;
            let ev = evaluate(
                &m,
                &manifest_root(&manifest),
                &restored,
                EvalOptions {
                    all_splits,
                    sidecar: sc.as_ref(),
                },
            )?;
            if json {
                print_json(&serde_json::json!({
                    "selected": ev.selected,
                    "scorecard": ev.scorecard,
                    "omissions": ev.omissions,
                }))
            } else {
                print!("{}", ev.scorecard.to_text());
                for o in &ev.omissions {
                    println!("missing: img_id {} ({})", o.img_id, o.expected.display());
                }
                Ok(())
            }
        }
        Command::Hash { images } => {
            let hashes = images
                .iter()
                .map(|p| io::load(p).map(|img| phash(&img)))
                .collect::<tierblur::Result<Vec<_>>>()?;
            for (p, h) in images.iter().zip(&hashes) {
                println!("{h}  {}", p.display());
            }
            if let [a, b] = hashes[..] {
                println!("distance {}", a.distance(b));
            }
            Ok(())
        }
    }
}

fn build(mut config: BuildConfig, inputs: Vec<PathBuf>, output: Option<PathBuf>) -> Result<()> {
    if !inputs.is_empty() {
        config.inputs = inputs;
    }
    if let Some(o) = output {
        config.output = o;
    }
    let s = build_dataset(&config)?;
    for st in &s.stages {
        log::info!("{:?}: {:?}, {} in, {} rejected", st.stage, st.status, st.input, st.rejected);
    }
    log::info!(
        "{} pairs kept (easy {}, medium {}, hard {}) from {} candidates in {} videos",
        s.kept,
        s.tiers[0],
        s.tiers[1],
        s.tiers[2],
        s.candidates,
        s.videos
    );
    println!("{}", s.manifest_path.display());
    Ok(())
}

fn output_path(input: &Path, output: Option<PathBuf>) -> Result<PathBuf> {
    let out = output.unwrap_or_else(|| input.to_path_buf());
    let same_dir = |p: &Path| p.parent().map(Path::to_path_buf).unwrap_or_default().canonicalize().ok();
    if same_dir(&out) != same_dir(input) {
        bail!("output manifest must sit beside the input so image paths stay valid");
    }
    Ok(out)
}

fn filter(config: &BuildConfig, path: &Path, output: Option<PathBuf>) -> Result<()> {
    let out = output_path(path, output)?;
    let mut m = load_manifest(path)?;
    let sc = sidecar(config)?;
    let outcome = filter_pairs(std::mem::take(&mut m.records), &config.filter, sc.as_ref())?;
    let (kept, isp_log, isp_rej) = isp_validate(outcome.kept);
    for st in &outcome.stages {
        log::info!("{:?}: {:?}, {} in, {} rejected", st.stage, st.status, st.input, st.rejected);
    }
    m.records = kept;
    m.provenance.filter = config.filter;
    if let Some(s) = &sc {
        m.provenance.sidecar = Some(s.header.clone().unwrap_or(serde_json::Value::Null));
    }
    m.provenance
        .rejection_log
        .extend(outcome.stages.into_iter().chain([isp_log]), outcome.rejections.into_iter().chain(isp_rej));
    m.renumber();
    emit_manifest(&m, &out)?;
    println!("{}", out.display());
    Ok(())
}

fn split(config: &BuildConfig, path: &Path) -> Result<()> {
    let m = load_manifest(path)?;
    let root = manifest_root(path);
    let outcome = split_videos(m.records, &config.split, config.seed)?;
    log::info!(
        "train {:?}, test {:?}, test pair fraction {:.3}",
        outcome.train_videos,
        outcome.test_videos,
        outcome.test_pair_fraction
    );
    let mut records = outcome.records;
    relayout(&mut records, &root)?;
    let mut provenance = m.provenance;
    provenance.seed = config.seed;
    provenance.split = config.split;
    let mut manifest = Manifest { provenance, records };
    manifest.renumber();
    emit_manifest(&manifest, path)?;
    println!("{}", path.display());
    Ok(())
}
