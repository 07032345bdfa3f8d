//! `tierblur`: build, filter, split, report on and evaluate tiered motion-blur datasets.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tierblur::synthesis::Tier;

#[derive(Parser, Debug)]
#[command(name = "tierblur", version, about = "Difficulty-stratified motion-blur dataset toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// TOML build configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Perceptual-score sidecar (JSON Lines of img_id, lpips).
    #[arg(long, global = true)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full pipeline over frame directories.
    Build {
        /// Frame directory, or directory of frame directories (repeatable).
        #[arg(long = "input", short = 'i')]
        inputs: Vec<PathBuf>,
        /// Output root for the image tree and manifest.jsonl.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Synthesise one pair from a frame directory and print the window scan.
    Synthesize {
        #[arg(long)]
        frames: PathBuf,
        #[arg(long)]
        center: usize,
        #[arg(long, default_value = "medium")]
        tier: Tier,
        /// Rank windows by distance to the range midpoint instead of the nearer bound.
        #[arg(long)]
        midpoint: bool,
        #[arg(long)]
        blur_out: Option<PathBuf>,
        #[arg(long)]
        sharp_out: Option<PathBuf>,
    },
    /// Re-apply the quality filters to a manifest.
    Filter {
        #[arg(long, short = 'm')]
        manifest: PathBuf,
        /// Destination manifest in the same directory (default: overwrite the input).
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Recompute the video-level split of a manifest and move its images.
    Split {
        #[arg(long, short = 'm')]
        manifest: PathBuf,
        #[arg(long)]
        test_fraction: Option<f64>,
    },
    /// Validation statistics for a manifest, or tier histogram of an external PSNR table.
    Report {
        #[arg(long, short = 'm', required_unless_present = "external", conflicts_with = "external")]
        manifest: Option<PathBuf>,
        /// CSV (id,psnr) or JSON Lines of externally computed PSNRs.
        #[arg(long)]
        external: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Score restored images per tier.
    Eval {
        #[arg(long, short = 'm')]
        manifest: PathBuf,
        /// Directory of <video>_<img_num>.png restorations.
        #[arg(long, short = 'r')]
        restored: PathBuf,
        /// Evaluate every split, not just test.
        #[arg(long)]
        all_splits: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print perceptual hashes, and their distance when two images are given.
    Hash {
        #[arg(required = true, num_args = 1..=2)]
        images: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
