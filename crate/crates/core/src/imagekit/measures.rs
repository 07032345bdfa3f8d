use super::ImageBuffer;

/// BT.601 luminance rounded to 8 bits. Single-channel input passes through unchanged.
pub fn luminance(img: &ImageBuffer) -> ImageBuffer {
    if img.channels() == 1 {
        return img.clone();
    }
    let data = img
        .data()
        .chunks_exact(3)
        .map(|px| {
            let l = 0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64;
            l.round().clamp(0.0, 255.0) as u8
        })
        .collect();
    ImageBuffer::new(img.width(), img.height(), 1, data).expect("same dimensions as a valid input")
}

/// Population standard deviation of `L / 255`.
pub fn rms_contrast(img: &ImageBuffer) -> f64 {
    let lum = luminance(img);
    let n = lum.data().len() as f64;
    let mean = lum.data().iter().map(|&v| v as u64).sum::<u64>() as f64 / n;
    let var = lum
        .data()
        .iter()
        .map(|&v| (v as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    var.sqrt() / 255.0
}

/// 4-neighbour Laplacian of the luminance plane over the interior, row-major,
/// `(width - 2) x (height - 2)` values.
pub fn laplacian_response(img: &ImageBuffer) -> Vec<f64> {
    let lum = luminance(img);
    let (w, h) = (lum.width(), lum.height());
    let px = |x: usize, y: usize| lum.data()[y * w + x] as f64;
    let mut out = Vec::with_capacity((w - 2) * (h - 2));
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            out.push(px(x, y - 1) + px(x - 1, y) + px(x + 1, y) + px(x, y + 1) - 4.0 * px(x, y));
        }
    }
    out
}

/// Mean absolute Laplacian over the interior.
pub fn laplacian_energy(img: &ImageBuffer) -> f64 {
    let r = laplacian_response(img);
    r.iter().map(|v| v.abs()).sum::<f64>() / r.len() as f64
}

/// Population variance of the interior Laplacian response.
pub fn laplacian_variance(img: &ImageBuffer) -> f64 {
    let r = laplacian_response(img);
    let n = r.len() as f64;
    let mean = r.iter().sum::<f64>() / n;
    r.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n
}
