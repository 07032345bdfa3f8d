use std::sync::OnceLock;

use super::{ImageBuffer, LinearImage};
use crate::error::{Error, Result};

/// Power-law exponent used for linearization; the piecewise sRGB curve is not used.
pub const GAMMA: f64 = 2.2;

fn table() -> &'static [f64; 256] {
    static TABLE: OnceLock<[f64; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 256];
        for (v, slot) in t.iter_mut().enumerate() {
            *slot = (v as f64 / 255.0).powf(GAMMA);
        }
        t
    })
}

/// `(v / 255)^2.2`.
#[inline]
pub fn linearize_sample(v: u8) -> f64 {
    table()[v as usize]
}

pub fn linearize(img: &ImageBuffer) -> LinearImage {
    let data = img.data().iter().map(|&v| linearize_sample(v)).collect();
    LinearImage::from_parts_unchecked(img.width(), img.height(), img.channels(), data)
}

#[inline]
pub(crate) fn encode_sample(v: f64) -> u8 {
    (255.0 * v.powf(1.0 / GAMMA)).round().clamp(0.0, 255.0) as u8
}

/// `round(255 · v^(1/2.2))`, clamped to `[0, 255]`.
pub fn delinearize(img: &LinearImage) -> Result<ImageBuffer> {
    let mut out = Vec::with_capacity(img.data().len());
    for &v in img.data() {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain(format!("linear sample {v} outside [0, 1]")));
        }
        out.push(encode_sample(v));
    }
    ImageBuffer::new(img.width(), img.height(), img.channels(), out)
}
