//! Dataset construction: tiering, the sequential quality filters,
//! high-frequency suppression validation, video-level splitting and the
//! JSON-Lines manifest.
//!
//! Tiers are assigned from the achieved PSNR before filtering, so the motion
//! floor (Medium/Hard only) sees the final tier of each pair.

mod build;
mod filter;
mod layout;
mod manifest;
mod record;
mod sidecar;
mod split;

pub use build::{build_dataset, discover_videos, BuildSummary};
pub use filter::{
    dedup, filter_pairs, isp_check, isp_validate, FilterConfig, FilterOutcome, Rejection, Stage, StageLog,
    StageStatus,
};
pub use layout::{canonical_path, relayout, resolve_path, ImageRole};
pub use manifest::{emit_manifest, load_manifest, Manifest, Provenance, RejectionLog, MANIFEST_KIND};
pub use record::{assign_tier, tier_histogram, SampleRecord, Split, EASY_MIN_PSNR, HARD_MAX_PSNR};
pub use sidecar::{load_sidecar, parse_sidecar, write_sidecar, Sidecar};
pub use split::{split_objective, split_videos, SplitConfig, SplitOutcome};

#[cfg(test)]
pub(crate) use record::testing::record as record_fixture;
