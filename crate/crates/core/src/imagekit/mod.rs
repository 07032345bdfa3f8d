//! Pixel-level numerics shared by every stage: rasters, gamma linearization,
//! quality metrics, sharpness/contrast/energy measures and perceptual hashing.
//!
//! All functions are pure and operate on immutable inputs.
//!
//! Conventions used throughout:
//!
//! * rounding is half away from zero (`f64::round`);
//! * luminance is ITU-R BT.601 (`0.299 R + 0.587 G + 0.114 B`), rounded to 8 bits;
//! * SSIM uses an 11×11 Gaussian window with σ = 1.5, K1 = 0.01, K2 = 0.03 and
//!   a dynamic range of 255. These are the customary defaults and may differ
//!   from the constants used by other tools that produced reference numbers;
//! * the Laplacian is the 4-neighbour kernel `[[0,1,0],[1,-4,1],[0,1,0]]`
//!   evaluated on the interior only (the 1-pixel border is excluded).

pub(crate) mod gamma;
pub mod io;
mod measures;
mod phash;
mod quality;
pub(crate) mod resize;

pub use gamma::{delinearize, linearize, linearize_sample, GAMMA};
pub use measures::{laplacian_energy, laplacian_response, laplacian_variance, luminance, rms_contrast};
pub use phash::{hamming, phash, PerceptualHash};
pub use quality::{mse, psnr, ssim, PsnrValue, SSIM_WINDOW};

use crate::error::{Error, Result};

/// Smallest width/height accepted for a raster.
pub const MIN_DIMENSION: usize = 3;

/// 8-bit raster, row-major, interleaved channels (1 = luminance, 3 = RGB).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<u8>) -> Result<Self> {
        check_shape(width, height, channels, data.len())?;
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    /// Image filled with a single value in every sample.
    pub fn filled(width: usize, height: usize, channels: usize, value: u8) -> Result<Self> {
        Self::new(width, height, channels, vec![value; width * height * channels])
    }

    /// Builds an image by evaluating `f(x, y, channel)` for every sample.
    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> u8,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * channels);
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    data.push(f(x, y, c));
                }
            }
        }
        Self::new(width, height, channels, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn get(&self, x: usize, y: usize, channel: usize) -> u8 {
        self.data[(y * self.width + x) * self.channels + channel]
    }

    pub fn same_shape(&self, other: &ImageBuffer) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    pub(crate) fn ensure_same_shape(&self, other: &ImageBuffer) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{}x{}x{} vs {}x{}x{}",
                self.width, self.height, self.channels, other.width, other.height, other.channels
            )))
        }
    }
}

/// Linear-light raster with samples in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearImage {
    width: usize,
    height: usize,
    channels: usize,
    data: Vec<f64>,
}

impl LinearImage {
    pub fn new(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(width, height, channels, data.len())?;
        if let Some(bad) = data.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Domain(format!("linear sample {bad} outside [0, 1]")));
        }
        Ok(Self {
            width,
            height,
            channels,
            data,
        })
    }

    pub(crate) fn from_parts_unchecked(width: usize, height: usize, channels: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), width * height * channels);
        Self {
            width,
            height,
            channels,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

fn check_shape(width: usize, height: usize, channels: usize, len: usize) -> Result<()> {
    if channels != 1 && channels != 3 {
        return Err(Error::Shape(format!("unsupported channel count {channels}")));
    }
    if width < MIN_DIMENSION || height < MIN_DIMENSION {
        return Err(Error::Shape(format!(
            "{width}x{height} is smaller than the {MIN_DIMENSION}x{MIN_DIMENSION} minimum"
        )));
    }
    let expected = width * height * channels;
    if len != expected {
        return Err(Error::Shape(format!(
            "buffer holds {len} samples, {width}x{height}x{channels} needs {expected}"
        )));
    }
    Ok(())
}
