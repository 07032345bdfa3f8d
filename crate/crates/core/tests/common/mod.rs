#![allow(dead_code)]

pub mod stat_fixtures;

use tierblur::fixtures::{noise_texture, translating_sequence};
use tierblur::imagekit::PerceptualHash;
use tierblur::pipeline::{assign_tier, SampleRecord, Split};
use tierblur::synthesis::Tier;
use tierblur::ImageBuffer;

/// A retained-looking record with the given PSNR; tier follows from it.
pub fn record(video: &str, img_num: usize, psnr: f64) -> SampleRecord {
    let tier = assign_tier(psnr).unwrap();
    SampleRecord {
        img_id: 0,
        video: video.to_string(),
        img_num,
        psnr,
        ssim: 0.9,
        lpips: None,
        motion: 3.0,
        sharpness: 500.0,
        contrast: 0.2,
        isp_sharp: 10.0,
        isp_blur: 7.0,
        isp_diff: 3.0,
        blur_window: 5,
        difficulty: tier,
        split: Split::Unassigned,
        t_s: img_num.saturating_sub(2),
        t_e: img_num.saturating_sub(2) + 4,
        target_tier: tier,
        target_p_min: 24.0,
        target_p_max: 30.0,
        epsilon: 1.0,
        phash: PerceptualHash((img_num as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        blur_path: format!("blur/{video}_{img_num}.png"),
        sharp_path: format!("sharp/{video}_{img_num}.png"),
        extra: Default::default(),
    }
}

pub fn psnr_for(tier: Tier) -> f64 {
    match tier {
        Tier::Easy => 32.0,
        Tier::Medium => 27.0,
        Tier::Hard => 22.0,
    }
}

/// `frames` frames of a wrapped noise texture moving `step` px per frame.
pub fn translating(size: usize, frames: usize, seed: u64, sigma: f64, step: (isize, isize)) -> Vec<ImageBuffer> {
    translating_sequence(&noise_texture(size, size, 3, seed, sigma, 40.0), frames, step)
}

/// Independent scalar gamma: `(v/255)^2.2`.
pub fn lin(v: u8) -> f64 {
    (v as f64 / 255.0).powf(2.2)
}

/// Independent inverse gamma with half-away-from-zero rounding.
pub fn enc(x: f64) -> u8 {
    (255.0 * x.powf(1.0 / 2.2)).round().clamp(0.0, 255.0) as u8
}

/// Independent PSNR over joint samples; `None` for identical images.
pub fn psnr_oracle(a: &[u8], b: &[u8]) -> Option<f64> {
    let se: f64 = a.iter().zip(b).map(|(&x, &y)| (x as f64 - y as f64).powi(2)).sum();
    (se > 0.0).then(|| 10.0 * (255.0f64 * 255.0 / (se / a.len() as f64)).log10())
}

/// Blur of `frames[t_c - w/2 ..= t_c + w/2]` recomputed from scratch.
pub fn blur_oracle(frames: &[ImageBuffer], t_c: usize, w: usize) -> Vec<u8> {
    let h = w / 2;
    let window = &frames[t_c - h..=t_c + h];
    (0..frames[0].data().len())
        .map(|i| enc(window.iter().map(|f| lin(f.data()[i])).sum::<f64>() / w as f64))
        .collect()
}

/// Brute-force window search: argmin over all in-bounds odd windows of the
/// nearest-bound distance, smaller window on ties. Returns `(window, epsilon)`.
pub fn window_oracle(psnrs: &[(usize, Option<f64>)], p_min: f64, p_max: f64) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for &(w, p) in psnrs {
        let e = match p {
            Some(p) => (p - p_min).abs().min((p - p_max).abs()),
            None => f64::INFINITY,
        };
        if e.is_finite() && best.is_none_or(|(_, b)| e < b) {
            best = Some((w, e));
        }
    }
    best
}

/// PSNR of every in-bounds window around `t_c`, ascending window size.
pub fn window_psnrs(frames: &[ImageBuffer], t_c: usize) -> Vec<(usize, Option<f64>)> {
    (3..=21)
        .step_by(2)
        .take_while(|w| t_c >= w / 2 && t_c + w / 2 < frames.len())
        .map(|w| (w, psnr_oracle(&blur_oracle(frames, t_c, w), frames[t_c].data())))
        .collect()
}
