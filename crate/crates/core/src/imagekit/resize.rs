//! Bilinear resampling with pixel-centre alignment.

/// Resamples an interleaved `f32` plane to `new_w x new_h`.
pub(crate) fn bilinear(
    src: &[f32],
    width: usize,
    height: usize,
    channels: usize,
    new_w: usize,
    new_h: usize,
) -> Vec<f32> {
    let sx = width as f64 / new_w as f64;
    let sy = height as f64 / new_h as f64;
    let mut out = vec![0.0f32; new_w * new_h * channels];
    for y in 0..new_h {
        let fy = ((y as f64 + 0.5) * sy - 0.5).clamp(0.0, (height - 1) as f64);
        let y0 = fy.floor() as usize;
        let y1 = (y0 + 1).min(height - 1);
        let ty = (fy - y0 as f64) as f32;
        for x in 0..new_w {
            let fx = ((x as f64 + 0.5) * sx - 0.5).clamp(0.0, (width - 1) as f64);
            let x0 = fx.floor() as usize;
            let x1 = (x0 + 1).min(width - 1);
            let tx = (fx - x0 as f64) as f32;
            for c in 0..channels {
                let at = |xx: usize, yy: usize| src[(yy * width + xx) * channels + c];
                let top = at(x0, y0) * (1.0 - tx) + at(x1, y0) * tx;
                let bottom = at(x0, y1) * (1.0 - tx) + at(x1, y1) * tx;
                out[(y * new_w + x) * channels + c] = top * (1.0 - ty) + bottom * ty;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_when_size_unchanged() {
        let src: Vec<f32> = (0..20).map(|v| v as f32).collect();
        assert_eq!(bilinear(&src, 5, 4, 1, 5, 4), src);
    }

    #[test]
    fn halving_averages_pairs() {
        let src = vec![0.0, 2.0, 4.0, 6.0, 0.0, 2.0, 4.0, 6.0];
        assert_eq!(bilinear(&src, 4, 2, 1, 2, 1), vec![1.0, 5.0]);
    }
}
