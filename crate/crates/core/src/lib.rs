//! Construction, validation and stratified evaluation of difficulty-tiered
//! motion-blur datasets built from high-framerate frame sequences.
//!
//! The stages, in pipeline order:
//!
//! 1. [`synthesis::select_candidates`] picks sharp, contrasted centre frames;
//! 2. [`synthesis::synthesize_pair`] averages a symmetric window of frames in
//!    linear light, choosing the window size whose PSNR lands closest to a
//!    target range;
//! 3. [`pipeline`] measures every pair, assigns tiers from the achieved PSNR,
//!    filters (SSIM, motion, perceptual score, near-duplicates), validates
//!    high-frequency suppression, splits by video and writes the manifest;
//! 4. [`analytics`] reports effect sizes and rank statistics over a manifest;
//! 5. [`eval`] scores restoration outputs per tier.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod config;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod frames;
pub mod flow;
pub mod imagekit;
pub mod pipeline;
pub mod synthesis;

pub use error::{Error, Result};
pub use imagekit::{ImageBuffer, LinearImage, PsnrValue};
