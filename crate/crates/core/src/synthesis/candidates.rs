use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameSource;
use crate::imagekit::{laplacian_variance, rms_contrast};

/// Stride sampling and sharpness/contrast thresholds for centre frames.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CandidatePolicy {
    /// Videos shorter than this use `short_stride`.
    pub short_video_threshold: usize,
    pub short_stride: usize,
    pub long_stride: usize,
    /// Frames below this percentile of the video's sampled Laplacian variances are dropped.
    pub min_sharpness_percentile: f64,
    /// Minimum RMS contrast of normalised luminance.
    pub min_contrast: f64,
}

impl Default for CandidatePolicy {
    fn default() -> Self {
        Self {
            short_video_threshold: 800,
            short_stride: 15,
            long_stride: 30,
            min_sharpness_percentile: 50.0,
            min_contrast: 0.10,
        }
    }
}

impl CandidatePolicy {
    pub fn validate(&self) -> Result<()> {
        if self.short_stride == 0 || self.long_stride == 0 {
            return Err(Error::Config("candidate strides must be at least 1".into()));
        }
        if !(0.0..=100.0).contains(&self.min_sharpness_percentile) {
            return Err(Error::Config(format!(
                "sharpness percentile {} outside [0, 100]",
                self.min_sharpness_percentile
            )));
        }
        Ok(())
    }

    pub fn stride_for(&self, len: usize) -> usize {
        if len < self.short_video_threshold {
            self.short_stride
        } else {
            self.long_stride
        }
    }
}

/// Stride-sampled centre positions, starting half a stride in and keeping
/// only frames with a neighbour on each side.
pub fn sample_indices(len: usize, policy: &CandidatePolicy) -> Vec<usize> {
    let stride = policy.stride_for(len);
    (stride / 2..len)
        .step_by(stride)
        .filter(|&i| i >= 1 && i + 1 < len)
        .collect()
}

/// Linear-interpolated percentile of unsorted data.
fn percentile(values: &[f64], pct: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = pct / 100.0 * (v.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (rank - lo as f64)
}

/// Sampled centre indices that pass the sharpness-percentile and contrast
/// floors, in increasing order. Frames with zero Laplacian variance never pass.
pub fn select_candidates<S: FrameSource + ?Sized>(frames: &S, policy: &CandidatePolicy) -> Result<Vec<usize>> {
    policy.validate()?;
    if frames.len() < 3 {
        return Err(Error::Domain(format!(
            "candidate selection needs at least 3 frames, got {}",
            frames.len()
        )));
    }
    let sampled = sample_indices(frames.len(), policy);
    if sampled.is_empty() {
        return Ok(Vec::new());
    }
    let scores = sampled
        .par_iter()
        .map(|&i| {
            let f = frames.frame(i)?;
            Ok((laplacian_variance(&f), rms_contrast(&f)))
        })
        .collect::<Result<Vec<_>>>()?;
    let sharpness: Vec<f64> = scores.iter().map(|s| s.0).collect();
    let floor = percentile(&sharpness, policy.min_sharpness_percentile);
    Ok(sampled
        .into_iter()
        .zip(scores)
        .filter(|(_, (sharp, contrast))| *sharp > 0.0 && *sharp >= floor && *contrast >= policy.min_contrast)
        .map(|(i, _)| i)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::noise_texture;
    use crate::imagekit::ImageBuffer;

    #[test]
    fn stride_depends_on_length() {
        let p = CandidatePolicy::default();
        assert_eq!(p.stride_for(900), 30);
        assert_eq!(p.stride_for(800), 30);
        assert_eq!(p.stride_for(300), 15);
        let long = sample_indices(900, &p);
        assert!(long.windows(2).all(|w| w[1] - w[0] == 30));
        assert_eq!(long.len(), 30);
        let short = sample_indices(300, &p);
        assert!(short.windows(2).all(|w| w[1] - w[0] == 15));
        assert_eq!(short[0], 7);
    }

    #[test]
    fn percentile_interpolates() {
        assert_eq!(percentile(&[3.0, 1.0, 2.0, 4.0], 50.0), 2.5);
        assert_eq!(percentile(&[5.0], 50.0), 5.0);
        assert_eq!(percentile(&[1.0, 2.0, 3.0], 100.0), 3.0);
    }

    #[test]
    fn constant_video_yields_no_candidates() {
        let frames = vec![ImageBuffer::filled(16, 16, 3, 90).unwrap(); 40];
        assert!(select_candidates(&frames, &CandidatePolicy::default()).unwrap().is_empty());
    }

    #[test]
    fn sharpest_half_survives() {
        // alternate sharp and smooth frames; the median threshold keeps the sharp ones
        let frames: Vec<ImageBuffer> = (0..60)
            .map(|i| noise_texture(32, 32, 3, i as u64, if i % 2 == 0 { 0.7 } else { 3.0 }, 50.0))
            .collect();
        let policy = CandidatePolicy {
            short_stride: 1,
            ..CandidatePolicy::default()
        };
        let picked = select_candidates(&frames, &policy).unwrap();
        assert!(!picked.is_empty());
        assert!(picked.iter().all(|i| i % 2 == 0));
    }

    #[test]
    fn too_short_is_an_error() {
        let frames = vec![ImageBuffer::filled(8, 8, 3, 0).unwrap(); 2];
        assert!(select_candidates(&frames, &CandidatePolicy::default()).is_err());
    }
}
