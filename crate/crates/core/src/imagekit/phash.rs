use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::resize::bilinear;
use super::{luminance, ImageBuffer};
use crate::error::Error;

const RESIZED: usize = 32;
const BLOCK: usize = 8;

/// 64-bit DCT perceptual hash. Bit `i` holds the comparison of the `i`-th
/// low-frequency coefficient (row-major in the 8×8 block, DC skipped) against
/// the block median; bit 63 is always zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerceptualHash(pub u64);

impl PerceptualHash {
    pub fn distance(self, other: PerceptualHash) -> u32 {
        (self.0 ^ other.0).count_ones()
    }
}

pub fn hamming(a: PerceptualHash, b: PerceptualHash) -> u32 {
    a.distance(b)
}

impl fmt::Display for PerceptualHash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl FromStr for PerceptualHash {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        u64::from_str_radix(s, 16)
            .map(PerceptualHash)
            .map_err(|e| Error::Input(format!("bad perceptual hash {s:?}: {e}")))
    }
}

impl Serialize for PerceptualHash {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PerceptualHash {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// First `BLOCK` DCT-II coefficients of each row of an `n`-wide plane.
fn dct_rows(src: &[f64], n: usize, rows: usize, cos: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; rows * BLOCK];
    for r in 0..rows {
        let row = &src[r * n..(r + 1) * n];
        for k in 0..BLOCK {
            out[r * BLOCK + k] = row.iter().enumerate().map(|(i, v)| v * cos[k * n + i]).sum();
        }
    }
    out
}

pub fn phash(img: &ImageBuffer) -> PerceptualHash {
    let lum = luminance(img);
    let plane: Vec<f32> = lum.data().iter().map(|&v| v as f32).collect();
    let small = bilinear(&plane, lum.width(), lum.height(), 1, RESIZED, RESIZED);
    let small: Vec<f64> = small.into_iter().map(f64::from).collect();

    let n = RESIZED;
    let mut cos = vec![0.0; BLOCK * n];
    for k in 0..BLOCK {
        for i in 0..n {
            cos[k * n + i] = (PI / n as f64 * (i as f64 + 0.5) * k as f64).cos();
        }
    }
    // rows, then columns of the transposed 32x8 result
    let rows = dct_rows(&small, n, n, &cos);
    let mut transposed = vec![0.0; BLOCK * n];
    for r in 0..n {
        for k in 0..BLOCK {
            transposed[k * n + r] = rows[r * BLOCK + k];
        }
    }
    // block[u * 8 + v]: u = horizontal frequency, v = vertical frequency
    let block = dct_rows(&transposed, n, BLOCK, &cos);

    let coeffs: Vec<f64> = (0..BLOCK * BLOCK)
        .map(|i| block[(i % BLOCK) * BLOCK + i / BLOCK])
        .skip(1)
        .collect();
    let mut sorted = coeffs.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];

    let bits = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > median)
        .fold(0u64, |acc, (i, _)| acc | (1u64 << i));
    PerceptualHash(bits)
}
