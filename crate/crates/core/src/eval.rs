//! Per-tier scoring of restoration outputs against a manifest's sharp frames.
//!
//! PSNR is averaged per image. Pairs with infinite PSNR (a bit-exact
//! restoration) are excluded from PSNR means and counted separately.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imagekit::{io, psnr, ssim, PsnrValue};
use crate::pipeline::{Manifest, SampleRecord, Sidecar, Split};
use crate::synthesis::{Tier, TIERS};

/// Largest tolerated share of selected records without a restored image.
pub const MAX_MISSING_FRACTION: f64 = 0.05;

#[derive(Clone, Copy, Debug, Default)]
pub struct EvalOptions<'a> {
    /// Score every record instead of the test split only.
    pub all_splits: bool,
    /// Perceptual scores of restored/sharp pairs keyed by `img_id`.
    pub sidecar: Option<&'a Sidecar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleScore {
    pub img_id: u64,
    pub video: String,
    pub img_num: usize,
    pub tier: Tier,
    pub psnr: PsnrValue,
    pub ssim: f64,
    pub lpips: Option<f64>,
}

/// Aggregates over one tier or the whole evaluated set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TierScore {
    pub count: usize,
    /// Samples with infinite PSNR, excluded from `psnr`.
    pub infinite: usize,
    pub psnr: Option<f64>,
    pub ssim: Option<f64>,
    pub lpips: Option<f64>,
}

impl TierScore {
    fn of(samples: &[&SampleScore]) -> Self {
        let mean = |v: Vec<f64>| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
        Self {
            count: samples.len(),
            infinite: samples.iter().filter(|s| s.psnr.is_infinite()).count(),
            psnr: mean(samples.iter().filter_map(|s| s.psnr.finite()).collect()),
            ssim: mean(samples.iter().map(|s| s.ssim).collect()),
            lpips: mean(samples.iter().filter_map(|s| s.lpips).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratifiedScorecard {
    pub overall: TierScore,
    pub easy: TierScore,
    pub medium: TierScore,
    pub hard: TierScore,
    /// Easy mean PSNR minus Hard mean PSNR, dB.
    pub degradation_gap: Option<f64>,
}

impl StratifiedScorecard {
    /// Aggregates in a fixed order, so the result does not depend on sample order.
    pub fn from_samples(samples: &[SampleScore]) -> Self {
        let mut sorted: Vec<&SampleScore> = samples.iter().collect();
        sorted.sort_by_key(|s| s.img_id);
        let tier = |t: Tier| TierScore::of(&sorted.iter().copied().filter(|s| s.tier == t).collect::<Vec<_>>());
        let mut card = Self {
            overall: TierScore::of(&sorted),
            easy: tier(Tier::Easy),
            medium: tier(Tier::Medium),
            hard: tier(Tier::Hard),
            degradation_gap: None,
        };
        card.degradation_gap = degradation_gap(&card);
        card
    }

    pub fn tier(&self, t: Tier) -> &TierScore {
        match t {
            Tier::Easy => &self.easy,
            Tier::Medium => &self.medium,
            Tier::Hard => &self.hard,
        }
    }

    /// One-row table: Overall, Easy, Medium, Hard × PSNR, SSIM, LPIPS.
    pub fn to_text(&self) -> String {
        let fmt = |v: Option<f64>, digits: usize| v.map_or("-".to_string(), |x| format!("{x:.digits$}"));
        let mut s = String::new();
        let _ = write!(s, "{:<8}", "");
        for g in ["Overall", "Easy", "Medium", "Hard"] {
            let _ = write!(s, " | {g:^22}");
        }
        let _ = writeln!(s);
        let _ = write!(s, "{:<8}", "");
        for _ in 0..4 {
            let _ = write!(s, " | {:>6} {:>6} {:>7}", "PSNR", "SSIM", "LPIPS");
        }
        let _ = writeln!(s);
        let _ = write!(s, "{:<8}", "score");
        for t in [&self.overall, &self.easy, &self.medium, &self.hard] {
            let _ = write!(s, " | {:>6} {:>6} {:>7}", fmt(t.psnr, 2), fmt(t.ssim, 3), fmt(t.lpips, 3));
        }
        let _ = writeln!(s);
        let _ = write!(s, "{:<8}", "count");
        for t in [&self.overall, &self.easy, &self.medium, &self.hard] {
            let _ = write!(s, " | {:>22}", format!("{} ({} exact)", t.count, t.infinite));
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "Easy-to-Hard gap: {} dB", fmt(self.degradation_gap, 2));
        s
    }
}

/// Easy mean PSNR minus Hard mean PSNR; absent unless both means exist.
pub fn degradation_gap(card: &StratifiedScorecard) -> Option<f64> {
    Some(card.easy.psnr? - card.hard.psnr?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Omission {
    pub img_id: u64,
    pub expected: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub selected: usize,
    pub scorecard: StratifiedScorecard,
    pub omissions: Vec<Omission>,
    pub samples: Vec<SampleScore>,
}

fn score_one(
    r: &SampleRecord,
    manifest_root: &Path,
    restored: &Path,
    sidecar: Option<&Sidecar>,
) -> Result<SampleScore> {
    let sharp = io::load(&crate::pipeline::resolve_path(manifest_root, &r.sharp_path))?;
    let out = io::load(restored)?;
    if !out.same_shape(&sharp) {
        return Err(Error::Shape(format!(
            "{} is {}x{}x{}, reference is {}x{}x{}",
            restored.display(),
            out.width(),
            out.height(),
            out.channels(),
            sharp.width(),
            sharp.height(),
            sharp.channels()
        )));
    }
    Ok(SampleScore {
        img_id: r.img_id,
        video: r.video.clone(),
        img_num: r.img_num,
        tier: r.difficulty,
        psnr: psnr(&out, &sharp)?,
        ssim: ssim(&out, &sharp)?,
        lpips: sidecar.and_then(|s| s.get(r.img_id)),
    })
}

/// Scores `<restored_dir>/<video>_<img_num>.png` against each selected record's
/// sharp frame (paths relative to `manifest_root`). Missing files are listed
/// as omissions; more than [`MAX_MISSING_FRACTION`] of them is an error.
pub fn evaluate(
    manifest: &Manifest,
    manifest_root: &Path,
    restored_dir: &Path,
    options: EvalOptions<'_>,
) -> Result<Evaluation> {
    let selected: Vec<&SampleRecord> = manifest
        .records
        .iter()
        .filter(|r| options.all_splits || r.split == Split::Test)
        .collect();
    let mut omissions = Vec::new();
    let mut present = Vec::new();
    for r in &selected {
        let p = restored_dir.join(r.file_name());
        if p.is_file() {
            present.push((*r, p));
        } else {
            omissions.push(Omission {
                img_id: r.img_id,
                expected: p,
            });
        }
    }
    if !omissions.is_empty() {
        log::warn!("{} of {} restored images missing", omissions.len(), selected.len());
    }
    if omissions.len() as f64 > MAX_MISSING_FRACTION * selected.len() as f64 {
        return Err(Error::Evaluation(format!(
            "{} of {} restored images missing (limit {:.0}%); first missing: {}",
            omissions.len(),
            selected.len(),
            MAX_MISSING_FRACTION * 100.0,
            omissions[0].expected.display()
        )));
    }
    let samples = present
        .par_iter()
        .map(|(r, p)| score_one(r, manifest_root, p, options.sidecar))
        .collect::<Result<Vec<_>>>()?;
    Ok(Evaluation {
        selected: selected.len(),
        scorecard: StratifiedScorecard::from_samples(&samples),
        omissions,
        samples,
    })
}

/// Tier counts of the evaluated samples, `[easy, medium, hard]`.
pub fn tier_counts(card: &StratifiedScorecard) -> [usize; 3] {
    TIERS.map(|t| card.tier(t).count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(id: u64, tier: Tier, db: f64) -> SampleScore {
        SampleScore {
            img_id: id,
            video: "v".into(),
            img_num: id as usize,
            tier,
            psnr: PsnrValue::Finite(db),
            ssim: 0.9,
            lpips: None,
        }
    }

    #[test]
    fn gap_is_easy_minus_hard() {
        let s = vec![
            sample(0, Tier::Easy, 30.0),
            sample(1, Tier::Easy, 30.0),
            sample(2, Tier::Hard, 25.0),
            sample(3, Tier::Medium, 27.0),
        ];
        let card = StratifiedScorecard::from_samples(&s);
        assert_eq!(card.degradation_gap, Some(5.0));
        assert_eq!(card.overall.count, 4);
        assert!(card.lpips_absent());
    }

    #[test]
    fn empty_tier_gives_absent_gap() {
        let card = StratifiedScorecard::from_samples(&[sample(0, Tier::Easy, 30.0)]);
        assert_eq!(card.degradation_gap, None);
        assert_eq!(card.hard.psnr, None);
    }

    #[test]
    fn infinite_psnr_excluded_from_means() {
        let mut s = vec![sample(0, Tier::Easy, 30.0), sample(1, Tier::Easy, 0.0)];
        s[1].psnr = PsnrValue::Infinite;
        let card = StratifiedScorecard::from_samples(&s);
        assert_eq!(card.easy.psnr, Some(30.0));
        assert_eq!(card.easy.infinite, 1);
        assert!(card.to_text().contains("Easy-to-Hard gap: - dB"));
    }

    impl StratifiedScorecard {
        fn lpips_absent(&self) -> bool {
            [&self.overall, &self.easy, &self.medium, &self.hard].iter().all(|t| t.lpips.is_none())
        }
    }
}
