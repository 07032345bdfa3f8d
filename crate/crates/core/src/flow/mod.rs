//! Dense optical flow between consecutive frames and window-level motion magnitude.
//!
//! [`window_motion`] averages the per-pair mean flow magnitude over the
//! `t_e - t_s` consecutive pairs of a window, i.e. it normalises by the number
//! of flow fields (`W - 1`) rather than by the number of frames `W`.

mod farneback;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameSource;
use crate::imagekit::ImageBuffer;

pub use farneback::estimate_flow;

/// Parameters of the polynomial-expansion flow estimator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowParams {
    /// Downscale ratio between pyramid layers, in (0, 1).
    pub pyramid_scale: f64,
    /// Number of pyramid layers including the full-resolution one.
    pub levels: usize,
    /// Side of the averaging window used when solving for displacement.
    pub window_size: usize,
    /// Solver iterations per pyramid layer.
    pub iterations: usize,
    /// Half-size of the polynomial-expansion neighbourhood.
    pub poly_n: usize,
    /// Gaussian σ weighting the polynomial fit.
    pub poly_sigma: f64,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            pyramid_scale: 0.5,
            levels: 3,
            window_size: 15,
            iterations: 3,
            poly_n: 5,
            poly_sigma: 1.1,
        }
    }
}

impl FlowParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.pyramid_scale > 0.0 && self.pyramid_scale < 1.0) {
            return Err(Error::Config(format!(
                "pyramid_scale must be in (0, 1), got {}",
                self.pyramid_scale
            )));
        }
        if self.levels == 0 || self.window_size == 0 || self.iterations == 0 || self.poly_n == 0 {
            return Err(Error::Config("flow counts must all be at least 1".into()));
        }
        if !(self.poly_sigma > 0.0) {
            return Err(Error::Config(format!("poly_sigma must be positive, got {}", self.poly_sigma)));
        }
        Ok(())
    }
}

/// Per-pixel displacement `(dx, dy)` in px/frame, mapping `prev` onto `next`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowField {
    width: usize,
    height: usize,
    vectors: Vec<[f32; 2]>,
}

impl FlowField {
    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            vectors: vec![[0.0; 2]; width * height],
        }
    }

    /// Checks that there is one finite vector per pixel.
    pub fn new(width: usize, height: usize, vectors: Vec<[f32; 2]>) -> Result<Self> {
        if vectors.len() != width * height {
            return Err(Error::Shape(format!(
                "{} vectors for a {width}x{height} field",
                vectors.len()
            )));
        }
        if vectors.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Domain("flow vectors must be finite".into()));
        }
        Ok(Self { width, height, vectors })
    }

    pub(crate) fn from_vectors(width: usize, height: usize, vectors: Vec<[f32; 2]>) -> Self {
        debug_assert_eq!(vectors.len(), width * height);
        Self { width, height, vectors }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn vectors(&self) -> &[[f32; 2]] {
        &self.vectors
    }

    pub fn get(&self, x: usize, y: usize) -> [f32; 2] {
        self.vectors[y * self.width + x]
    }

    /// Mean displacement over the rectangle `[x0, x1) x [y0, y1)`.
    pub fn mean_vector_in(&self, x0: usize, y0: usize, x1: usize, y1: usize) -> [f64; 2] {
        let mut sum = [0.0f64; 2];
        for y in y0..y1 {
            for x in x0..x1 {
                let v = self.get(x, y);
                sum[0] += v[0] as f64;
                sum[1] += v[1] as f64;
            }
        }
        let n = ((x1 - x0) * (y1 - y0)) as f64;
        [sum[0] / n, sum[1] / n]
    }

    /// Mean displacement over the central crop spanning the middle half of each axis.
    pub fn central_mean_vector(&self) -> [f64; 2] {
        let (w, h) = (self.width, self.height);
        self.mean_vector_in(w / 4, h / 4, w - w / 4, h - h / 4)
    }
}

/// Spatial mean of the per-pixel Euclidean magnitude.
pub fn mean_flow_magnitude(field: &FlowField) -> f64 {
    if field.vectors.is_empty() {
        return 0.0;
    }
    let sum: f64 = field
        .vectors
        .iter()
        .map(|v| (v[0] as f64).hypot(v[1] as f64))
        .sum();
    sum / field.vectors.len() as f64
}

/// Average of [`mean_flow_magnitude`] over the consecutive pairs in `[t_s, t_e]`.
pub fn window_motion<S: FrameSource + ?Sized>(
    frames: &S,
    t_s: usize,
    t_e: usize,
    params: &FlowParams,
) -> Result<f64> {
    if t_e <= t_s {
        return Err(Error::Domain(format!(
            "motion window [{t_s}, {t_e}] holds fewer than 2 frames"
        )));
    }
    if t_e >= frames.len() {
        return Err(Error::Domain(format!(
            "motion window [{t_s}, {t_e}] exceeds a sequence of {} frames",
            frames.len()
        )));
    }
    let magnitudes = (t_s..t_e)
        .into_par_iter()
        .map(|t| {
            let prev = frames.frame(t)?;
            let next = frames.frame(t + 1)?;
            Ok(mean_flow_magnitude(&estimate_flow(&prev, &next, params)?))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(magnitudes.iter().sum::<f64>() / magnitudes.len() as f64)
}

/// Convenience for callers holding two in-memory frames.
pub fn pair_motion(prev: &ImageBuffer, next: &ImageBuffer, params: &FlowParams) -> Result<f64> {
    Ok(mean_flow_magnitude(&estimate_flow(prev, next, params)?))
}
