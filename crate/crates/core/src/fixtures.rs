//! Seed-fixed synthetic content: periodic noise textures, wrap-around
//! translations and small frame-sequence corpora. Used by the test suites and
//! by the corpus generator example.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::frames::write_sequence;
use crate::imagekit::ImageBuffer;

/// Periodic band-limited noise: uniform noise circularly smoothed with a
/// Gaussian of `sigma` px, rescaled to mean 128 and standard deviation `spread`.
/// Channels share structure but carry independent tints.
pub fn noise_texture(width: usize, height: usize, channels: usize, seed: u64, sigma: f64, spread: f64) -> ImageBuffer {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = smooth_periodic(&random_plane(&mut rng, width, height), width, height, sigma);
    let base = standardize(&base);
    let tints: Vec<Vec<f64>> = (0..channels)
        .map(|_| {
            let p = smooth_periodic(&random_plane(&mut rng, width, height), width, height, sigma);
            standardize(&p)
        })
        .collect();
    ImageBuffer::from_fn(width, height, channels, |x, y, c| {
        let i = y * width + x;
        let v = 128.0 + spread * (0.8 * base[i] + 0.2 * tints[c][i]);
        v.round().clamp(0.0, 255.0) as u8
    })
    .expect("fixture dimensions are valid")
}

fn random_plane(rng: &mut ChaCha8Rng, width: usize, height: usize) -> Vec<f64> {
    (0..width * height).map(|_| rng.gen::<f64>()).collect()
}

fn standardize(p: &[f64]) -> Vec<f64> {
    let n = p.len() as f64;
    let mean = p.iter().sum::<f64>() / n;
    let sd = (p.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt().max(1e-12);
    p.iter().map(|v| (v - mean) / sd).collect()
}

fn smooth_periodic(p: &[f64], width: usize, height: usize, sigma: f64) -> Vec<f64> {
    if sigma <= 0.0 {
        return p.to_vec();
    }
    let radius = (3.0 * sigma).ceil() as isize;
    let kernel: Vec<f64> = (-radius..=radius)
        .map(|d| (-(d * d) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    let ks: f64 = kernel.iter().sum();
    let (w, h) = (width as isize, height as isize);
    let mut tmp = vec![0.0; p.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, kv) in kernel.iter().enumerate() {
                let xx = (x + i as isize - radius).rem_euclid(w);
                acc += kv * p[(y * w + xx) as usize];
            }
            tmp[(y * w + x) as usize] = acc / ks;
        }
    }
    let mut out = vec![0.0; p.len()];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, kv) in kernel.iter().enumerate() {
                let yy = (y + i as isize - radius).rem_euclid(h);
                acc += kv * tmp[(yy * w + x) as usize];
            }
            out[(y * w + x) as usize] = acc / ks;
        }
    }
    out
}

/// Moves the content by `(dx, dy)` with wrap-around: `out(x, y) = in(x - dx, y - dy)`.
pub fn shift_wrap(img: &ImageBuffer, dx: isize, dy: isize) -> ImageBuffer {
    let (w, h) = (img.width() as isize, img.height() as isize);
    ImageBuffer::from_fn(img.width(), img.height(), img.channels(), |x, y, c| {
        let sx = (x as isize - dx).rem_euclid(w) as usize;
        let sy = (y as isize - dy).rem_euclid(h) as usize;
        img.get(sx, sy, c)
    })
    .expect("same dimensions as a valid input")
}

/// `frames` copies of `texture`; frame `t` is shifted by `t * step`.
pub fn translating_sequence(texture: &ImageBuffer, frames: usize, step: (isize, isize)) -> Vec<ImageBuffer> {
    (0..frames as isize)
        .map(|t| shift_wrap(texture, t * step.0, t * step.1))
        .collect()
}

/// Description of one synthetic corpus video.
#[derive(Clone, Debug)]
pub struct VideoSpec {
    pub name: String,
    pub seed: u64,
    pub frames: usize,
    pub step: (isize, isize),
    pub sigma: f64,
}

/// The bundled three-video corpus: 64×64 RGB, 90 frames each, mixed velocities
/// and texture scales chosen so Easy, Medium and Hard targets are all reachable.
pub fn bundled_corpus_specs() -> Vec<VideoSpec> {
    vec![
        VideoSpec {
            name: "alley".into(),
            seed: 11,
            frames: 90,
            step: (1, 1),
            sigma: 6.0,
        },
        VideoSpec {
            name: "bridge".into(),
            seed: 22,
            frames: 90,
            step: (-1, 1),
            sigma: 6.5,
        },
        VideoSpec {
            name: "canal".into(),
            seed: 33,
            frames: 90,
            step: (1, -1),
            sigma: 5.5,
        },
    ]
}

pub const CORPUS_SIZE: usize = 64;

/// Renders one video spec to frames.
pub fn render_video(spec: &VideoSpec, size: usize) -> Vec<ImageBuffer> {
    let texture = noise_texture(size, size, 3, spec.seed, spec.sigma, 45.0);
    translating_sequence(&texture, spec.frames, spec.step)
}

/// Writes `<root>/<video>/000000.png ...` for every spec.
pub fn write_corpus(root: &Path, specs: &[VideoSpec], size: usize) -> Result<()> {
    for spec in specs {
        write_sequence(&root.join(&spec.name), &render_video(spec, size))?;
    }
    Ok(())
}
