use crate::error::{Error, Result};
use crate::frames::FrameSource;
use crate::imagekit::gamma::encode_sample;
use crate::imagekit::{linearize_sample, psnr, ImageBuffer, PsnrValue};

use super::{EpsilonMode, TargetRange};

/// Odd window sizes scanned, smallest first.
pub const WINDOW_SIZES: [usize; 10] = [3, 5, 7, 9, 11, 13, 15, 17, 19, 21];

/// `(t_c - w/2, t_c + w/2)`, or `None` when the window leaves `[0, total)`.
pub fn window_bounds(t_c: usize, w: usize, total: usize) -> Option<(usize, usize)> {
    debug_assert!(w % 2 == 1, "window sizes are odd");
    let half = w / 2;
    let t_s = t_c.checked_sub(half)?;
    let t_e = t_c + half;
    (t_e < total).then_some((t_s, t_e))
}

/// One scanned window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowTrial {
    pub window: usize,
    pub psnr: PsnrValue,
    pub epsilon: f64,
}

#[derive(Clone, Debug)]
pub struct SynthesisResult {
    pub blur: ImageBuffer,
    pub sharp: ImageBuffer,
    pub center: usize,
    pub window_size: usize,
    pub t_s: usize,
    pub t_e: usize,
    pub achieved_psnr: f64,
    pub target: TargetRange,
    pub epsilon: f64,
    /// Every in-bounds window in scan order.
    pub trials: Vec<WindowTrial>,
}

/// Averages frames in linear light over each in-bounds odd window around
/// `t_c` and keeps the window whose PSNR against the centre frame has the
/// smallest epsilon. Ties go to the smaller window.
pub fn synthesize_pair<S: FrameSource + ?Sized>(
    frames: &S,
    t_c: usize,
    target: &TargetRange,
    mode: EpsilonMode,
) -> Result<SynthesisResult> {
    let total = frames.len();
    if t_c >= total || window_bounds(t_c, WINDOW_SIZES[0], total).is_none() {
        return Err(Error::Bounds { center: t_c, total });
    }
    let sharp = frames.frame(t_c)?.into_owned();
    let mut sum: Vec<f64> = sharp.data().iter().map(|&v| linearize_sample(v)).collect();

    let mut trials = Vec::new();
    let mut best: Option<(usize, ImageBuffer, f64, f64)> = None;
    let mut added = 0usize;
    for &w in &WINDOW_SIZES {
        // windows are nested, so the first misfit ends the scan
        if window_bounds(t_c, w, total).is_none() {
            break;
        }
        let half = w / 2;
        while added < half {
            added += 1;
            for idx in [t_c - added, t_c + added] {
                let f = frames.frame(idx)?;
                sharp.ensure_same_shape(&f)?;
                for (acc, &v) in sum.iter_mut().zip(f.data()) {
                    *acc += linearize_sample(v);
                }
            }
        }
        let inv = 1.0 / w as f64;
        let data = sum.iter().map(|&s| encode_sample((s * inv).min(1.0))).collect();
        let blur = ImageBuffer::new(sharp.width(), sharp.height(), sharp.channels(), data)?;
        let p = psnr(&blur, &sharp)?;
        let epsilon = match p {
            PsnrValue::Finite(db) => target.epsilon(db, mode),
            PsnrValue::Infinite => f64::INFINITY,
        };
        trials.push(WindowTrial { window: w, psnr: p, epsilon });
        let better = best.as_ref().map_or(epsilon.is_finite(), |b| epsilon < b.2);
        if better {
            best = Some((w, blur, epsilon, p.db()));
        }
    }

    let (window_size, blur, epsilon, achieved_psnr) = best.ok_or(Error::DegenerateScene)?;
    let (t_s, t_e) = window_bounds(t_c, window_size, total).expect("scanned windows fit");
    Ok(SynthesisResult {
        blur,
        sharp,
        center: t_c,
        window_size,
        t_s,
        t_e,
        achieved_psnr,
        target: *target,
        epsilon,
        trials,
    })
}
