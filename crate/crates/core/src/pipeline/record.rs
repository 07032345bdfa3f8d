use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::imagekit::PerceptualHash;
use crate::synthesis::Tier;

/// Lower PSNR bound (inclusive) of the Easy tier, dB.
pub const EASY_MIN_PSNR: f64 = 30.0;
/// Upper PSNR bound (exclusive) of the Hard tier, dB.
pub const HARD_MAX_PSNR: f64 = 24.0;

/// Easy iff `psnr >= 30`, Medium iff `24 <= psnr < 30`, Hard iff `psnr < 24`.
pub fn assign_tier(psnr: f64) -> Result<Tier> {
    if !psnr.is_finite() {
        return Err(Error::Domain(format!("cannot tier a pair with PSNR {psnr}")));
    }
    Ok(if psnr >= EASY_MIN_PSNR {
        Tier::Easy
    } else if psnr >= HARD_MAX_PSNR {
        Tier::Medium
    } else {
        Tier::Hard
    })
}

/// Tier counts `[easy, medium, hard]` of a PSNR column.
pub fn tier_histogram(psnrs: impl IntoIterator<Item = f64>) -> Result<[usize; 3]> {
    let mut counts = [0usize; 3];
    for p in psnrs {
        counts[assign_tier(p)?.index()] += 1;
    }
    Ok(counts)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
    #[default]
    Unassigned,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
            Split::Unassigned => "unassigned",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One blur-sharp pair with its full metadata row.
///
/// Paths are relative to the directory holding the manifest. Fields not
/// listed here survive a load/emit cycle through `extra`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub img_id: u64,
    pub video: String,
    pub img_num: usize,
    pub psnr: f64,
    pub ssim: f64,
    #[serde(default)]
    pub lpips: Option<f64>,
    pub motion: f64,
    pub sharpness: f64,
    pub contrast: f64,
    pub isp_sharp: f64,
    pub isp_blur: f64,
    pub isp_diff: f64,
    pub blur_window: usize,
    pub difficulty: Tier,
    pub split: Split,
    pub t_s: usize,
    pub t_e: usize,
    pub target_tier: Tier,
    pub target_p_min: f64,
    pub target_p_max: f64,
    pub epsilon: f64,
    pub phash: PerceptualHash,
    pub blur_path: String,
    pub sharp_path: String,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

impl SampleRecord {
    /// `<video>_<img_num>.png`, the file name used in the image tree and for restorations.
    pub fn file_name(&self) -> String {
        format!("{}_{}.png", self.video, self.img_num)
    }

    pub fn key(&self) -> (&str, usize) {
        (&self.video, self.img_num)
    }

    /// Checks the per-record invariants that hold for every retained pair.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Input(format!("record {} ({}): {msg}", self.img_id, self.file_name())));
        if !(self.blur_window % 2 == 1 && (3..=21).contains(&self.blur_window)) {
            return fail(format!("blur_window {} is not an odd size in 3..=21", self.blur_window));
        }
        if self.t_e < self.t_s || self.t_e - self.t_s + 1 != self.blur_window {
            return fail(format!("window [{}, {}] disagrees with blur_window {}", self.t_s, self.t_e, self.blur_window));
        }
        if assign_tier(self.psnr)? != self.difficulty {
            return fail(format!("difficulty {} inconsistent with psnr {}", self.difficulty, self.psnr));
        }
        if (self.isp_diff - (self.isp_sharp - self.isp_blur)).abs() > 1e-9 * self.isp_sharp.abs().max(1.0) {
            return fail("isp_diff != isp_sharp - isp_blur".into());
        }
        if !(self.isp_diff > 0.0) {
            return fail(format!("isp_diff {} is not positive", self.isp_diff));
        }
        Ok(())
    }
}
