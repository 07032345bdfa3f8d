use std::fmt;

use serde::{Deserialize, Serialize};

use super::{luminance, ImageBuffer};
use crate::error::{Error, Result};

/// Side length of the SSIM Gaussian window.
pub const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;
const DYNAMIC_RANGE: f64 = 255.0;

/// Peak signal-to-noise ratio in dB; `Infinite` exactly when the MSE is zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PsnrValue {
    Finite(f64),
    Infinite,
}

impl PsnrValue {
    pub fn from_mse(mse: f64) -> Self {
        if mse == 0.0 {
            PsnrValue::Infinite
        } else {
            PsnrValue::Finite(10.0 * (DYNAMIC_RANGE * DYNAMIC_RANGE / mse).log10())
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PsnrValue::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            PsnrValue::Finite(v) => Some(v),
            PsnrValue::Infinite => None,
        }
    }

    /// The value as `f64`, with `Infinite` mapped to `f64::INFINITY`.
    pub fn db(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for PsnrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsnrValue::Finite(v) => write!(f, "{v:.4} dB"),
            PsnrValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Mean squared error over all pixels and channels jointly.
pub fn mse(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    a.ensure_same_shape(b)?;
    let sum: u64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.data().len() as f64)
}

pub fn psnr(a: &ImageBuffer, b: &ImageBuffer) -> Result<PsnrValue> {
    Ok(PsnrValue::from_mse(mse(a, b)?))
}

fn gaussian_window() -> [f64; SSIM_WINDOW] {
    let mut w = [0.0; SSIM_WINDOW];
    let half = (SSIM_WINDOW / 2) as f64;
    for (i, slot) in w.iter_mut().enumerate() {
        let d = i as f64 - half;
        *slot = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= s);
    w
}

/// Separable "valid" filtering: output is `(w - k + 1) x (h - k + 1)`.
fn filter_valid(plane: &[f64], width: usize, height: usize, kernel: &[f64]) -> Vec<f64> {
    let k = kernel.len();
    let ow = width - k + 1;
    let oh = height - k + 1;
    let mut horiz = vec![0.0; ow * height];
    for y in 0..height {
        let row = &plane[y * width..(y + 1) * width];
        for x in 0..ow {
            horiz[y * ow + x] = kernel.iter().zip(&row[x..x + k]).map(|(w, v)| w * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = kernel
                .iter()
                .enumerate()
                .map(|(i, w)| w * horiz[(y + i) * ow + x])
                .sum();
        }
    }
    out
}

/// Mean structural similarity of the luminance planes.
pub fn ssim(a: &ImageBuffer, b: &ImageBuffer) -> Result<f64> {
    a.ensure_same_shape(b)?;
    let (w, h) = (a.width(), a.height());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::Shape(format!(
            "{w}x{h} is smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} SSIM window"
        )));
    }
    let la: Vec<f64> = luminance(a).data().iter().map(|&v| v as f64).collect();
    let lb: Vec<f64> = luminance(b).data().iter().map(|&v| v as f64).collect();
    let aa: Vec<f64> = la.iter().map(|v| v * v).collect();
    let bb: Vec<f64> = lb.iter().map(|v| v * v).collect();
    let ab: Vec<f64> = la.iter().zip(&lb).map(|(x, y)| x * y).collect();

    let kernel = gaussian_window();
    let mu_a = filter_valid(&la, w, h, &kernel);
    let mu_b = filter_valid(&lb, w, h, &kernel);
    let e_aa = filter_valid(&aa, w, h, &kernel);
    let e_bb = filter_valid(&bb, w, h, &kernel);
    let e_ab = filter_valid(&ab, w, h, &kernel);

    let c1 = (SSIM_K1 * DYNAMIC_RANGE).powi(2);
    let c2 = (SSIM_K2 * DYNAMIC_RANGE).powi(2);
    let n = mu_a.len();
    let mut total = 0.0;
    for i in 0..n {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let var_a = e_aa[i] - ma * ma;
        let var_b = e_bb[i] - mb * mb;
        let cov = e_ab[i] - ma * mb;
        total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2))
            / ((ma * ma + mb * mb + c1) * (var_a + var_b + c2));
    }
    Ok(total / n as f64)
}
