//! Candidate sharp-frame selection and PSNR-guided adaptive-window blur synthesis.

mod candidates;
mod target;
mod window;

pub use candidates::{sample_indices, select_candidates, CandidatePolicy};
pub use target::{EpsilonMode, TargetRange, Tier, TIERS};
pub use window::{synthesize_pair, window_bounds, SynthesisResult, WindowTrial, WINDOW_SIZES};
