//! Two-frame motion estimation by polynomial expansion (Farnebäck).
//!
//! Each neighbourhood is approximated by a quadratic `xᵀAx + bᵀx + c`. A
//! displacement `d` between the two frames shows up in the linear term as
//! `b₂ = b₁ − 2Ad`, so `d` is obtained by a windowed least-squares solve of
//! `A d = (b₁ − b₂) / 2`, refined coarse-to-fine over an image pyramid.
//!
//! Coefficient layout per pixel: `[b_y, b_x, a_yy, a_xx, a_xy]`.

use super::{FlowField, FlowParams};
use crate::error::Result;
use crate::imagekit::resize::bilinear;
use crate::imagekit::{luminance, ImageBuffer};

const MIN_LEVEL_SIZE: usize = 32;
const BORDER: usize = 5;
const BORDER_WEIGHTS: [f32; BORDER] = [0.14, 0.14, 0.4472, 0.4472, 0.4472];

struct Plane {
    width: usize,
    height: usize,
    data: Vec<f32>,
}

fn plane_of(img: &ImageBuffer) -> Plane {
    let lum = luminance(img);
    Plane {
        width: lum.width(),
        height: lum.height(),
        data: lum.data().iter().map(|&v| v as f32).collect(),
    }
}

fn gaussian_kernel(sigma: f64, radius: usize) -> Vec<f32> {
    let mut k: Vec<f64> = (0..=2 * radius)
        .map(|i| {
            let d = i as f64 - radius as f64;
            (-d * d / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    let s: f64 = k.iter().sum();
    k.iter_mut().for_each(|v| *v /= s);
    k.into_iter().map(|v| v as f32).collect()
}

/// Separable Gaussian smoothing with clamped borders.
fn smooth(plane: &Plane, sigma: f64) -> Plane {
    let ksize = (((sigma * 5.0).round() as usize) | 1).max(3);
    let radius = ksize / 2;
    let kernel = gaussian_kernel(sigma, radius);
    let (w, h) = (plane.width, plane.height);
    let mut tmp = vec![0.0f32; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, kv) in kernel.iter().enumerate() {
                let xx = (x + i).saturating_sub(radius).min(w - 1);
                acc += kv * plane.data[y * w + xx];
            }
            tmp[y * w + x] = acc;
        }
    }
    let mut out = vec![0.0f32; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (i, kv) in kernel.iter().enumerate() {
                let yy = (y + i).saturating_sub(radius).min(h - 1);
                acc += kv * tmp[yy * w + x];
            }
            out[y * w + x] = acc;
        }
    }
    Plane {
        width: w,
        height: h,
        data: out,
    }
}

/// Gaussian-weighted quadratic fit around every pixel.
fn poly_expansion(src: &Plane, n: usize, sigma: f64) -> Vec<f32> {
    let (w, h) = (src.width, src.height);
    let ni = n as isize;

    let mut g = vec![0.0f64; 2 * n + 1];
    for x in -ni..=ni {
        g[(x + ni) as usize] = (-(x * x) as f64 / (2.0 * sigma * sigma)).exp();
    }
    let s: f64 = g.iter().sum();
    g.iter_mut().for_each(|v| *v /= s);
    let gk = |k: isize| g[(k + ni) as usize];
    let xg = |k: isize| k as f64 * gk(k);
    let xxg = |k: isize| (k * k) as f64 * gk(k);

    // Gram matrix of the basis {1, x, y, x², y², xy} under the weights; only
    // the entries needed for the closed-form inverse are formed.
    let (mut g00, mut g11, mut g33, mut g55) = (0.0, 0.0, 0.0, 0.0);
    for y in -ni..=ni {
        for x in -ni..=ni {
            let wgt = gk(y) * gk(x);
            let (xf, yf) = (x as f64, y as f64);
            g00 += wgt;
            g11 += wgt * xf * xf;
            g33 += wgt * xf.powi(4);
            g55 += wgt * xf * xf * yf * yf;
        }
    }
    let ig11 = 1.0 / g11;
    let ig55 = 1.0 / g55;
    // inverse of the {1, x², y²} block [[g00, g11, g11], [g11, g33, g55], [g11, g55, g33]]
    let d = g33 - g55;
    let det = g00 * (g33 + g55) - 2.0 * g11 * g11;
    let ig03 = -g11 / det;
    let ig33 = (g00 * g33 - g11 * g11) / (det * d);
    let ig34 = -(g00 * g55 - g11 * g11) / (det * d);

    let mut out = vec![0.0f32; w * h * 5];
    let mut row = vec![[0.0f64; 3]; w];
    for y in 0..h {
        // vertical pass: Σg·I, Σ(y·g)·I, Σ(y²·g)·I
        for (x, r) in row.iter_mut().enumerate() {
            *r = [src.data[y * w + x] as f64 * gk(0), 0.0, 0.0];
        }
        for k in 1..=ni {
            let up = &src.data[(y as isize - k).max(0) as usize * w..][..w];
            let down = &src.data[(y as isize + k).min(h as isize - 1) as usize * w..][..w];
            for x in 0..w {
                let p = (up[x] + down[x]) as f64;
                row[x][0] += gk(k) * p;
                row[x][1] += xg(k) * (down[x] - up[x]) as f64;
                row[x][2] += xxg(k) * p;
            }
        }
        // horizontal pass
        let at = |x: isize| row[x.clamp(0, w as isize - 1) as usize];
        for x in 0..w as isize {
            let c = at(x);
            let (mut b1, mut b2, mut b3, mut b4, mut b5, mut b6) =
                (c[0] * gk(0), 0.0, c[1] * gk(0), 0.0, c[2] * gk(0), 0.0);
            for k in 1..=ni {
                let (r, l) = (at(x + k), at(x - k));
                b1 += (r[0] + l[0]) * gk(k);
                b2 += (r[0] - l[0]) * xg(k);
                b3 += (r[1] + l[1]) * gk(k);
                b4 += (r[0] + l[0]) * xxg(k);
                b5 += (r[2] + l[2]) * gk(k);
                b6 += (r[1] - l[1]) * xg(k);
            }
            let o = &mut out[(y * w + x as usize) * 5..][..5];
            o[0] = (b3 * ig11) as f32;
            o[1] = (b2 * ig11) as f32;
            o[2] = (b1 * ig03 + b5 * ig33 + b4 * ig34) as f32;
            o[3] = (b1 * ig03 + b4 * ig33 + b5 * ig34) as f32;
            o[4] = (b6 * ig55) as f32;
        }
    }
    out
}

/// Per-pixel normal equations `[G_yy, G_yx, G_xx, h_y, h_x]` for the current flow.
fn update_matrices(r0: &[f32], r1: &[f32], flow: &[[f32; 2]], w: usize, h: usize, m: &mut [f32]) {
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let [dx, dy] = flow[i];
            let fx = x as f32 + dx;
            let fy = y as f32 + dy;
            let x1 = fx.floor();
            let y1 = fy.floor();
            let p0 = &r0[i * 5..][..5];
            let (mut r2, mut r3, mut r4, mut r5, mut r6);
            if x1 >= 0.0 && y1 >= 0.0 && (x1 as usize) < w - 1 && (y1 as usize) < h - 1 {
                let (ax, ay) = (fx - x1, fy - y1);
                let (xi, yi) = (x1 as usize, y1 as usize);
                let a00 = (1.0 - ax) * (1.0 - ay);
                let a01 = ax * (1.0 - ay);
                let a10 = (1.0 - ax) * ay;
                let a11 = ax * ay;
                let s = |c: usize| {
                    a00 * r1[(yi * w + xi) * 5 + c]
                        + a01 * r1[(yi * w + xi + 1) * 5 + c]
                        + a10 * r1[((yi + 1) * w + xi) * 5 + c]
                        + a11 * r1[((yi + 1) * w + xi + 1) * 5 + c]
                };
                r2 = s(0);
                r3 = s(1);
                r4 = (p0[2] + s(2)) * 0.5;
                r5 = (p0[3] + s(3)) * 0.5;
                r6 = (p0[4] + s(4)) * 0.25;
            } else {
                r2 = 0.0;
                r3 = 0.0;
                r4 = p0[2];
                r5 = p0[3];
                r6 = p0[4] * 0.5;
            }
            r2 = (p0[0] - r2) * 0.5;
            r3 = (p0[1] - r3) * 0.5;
            r2 += r4 * dy + r6 * dx;
            r3 += r6 * dy + r5 * dx;

            if x < BORDER || y < BORDER || x >= w.saturating_sub(BORDER) || y >= h.saturating_sub(BORDER) {
                let mut scale = 1.0;
                if x < BORDER {
                    scale *= BORDER_WEIGHTS[x];
                }
                if x >= w.saturating_sub(BORDER) {
                    scale *= BORDER_WEIGHTS[(w - x - 1).min(BORDER - 1)];
                }
                if y < BORDER {
                    scale *= BORDER_WEIGHTS[y];
                }
                if y >= h.saturating_sub(BORDER) {
                    scale *= BORDER_WEIGHTS[(h - y - 1).min(BORDER - 1)];
                }
                r2 *= scale;
                r3 *= scale;
                r4 *= scale;
                r5 *= scale;
                r6 *= scale;
            }

            let o = &mut m[i * 5..][..5];
            o[0] = r4 * r4 + r6 * r6;
            o[1] = (r4 + r5) * r6;
            o[2] = r5 * r5 + r6 * r6;
            o[3] = r4 * r2 + r6 * r3;
            o[4] = r6 * r2 + r5 * r3;
        }
    }
}

/// Box-averages the normal equations and solves each 2×2 system.
fn solve_flow(m: &[f32], w: usize, h: usize, block: usize, flow: &mut [[f32; 2]]) {
    let r = (block / 2) as isize;
    let scale = 1.0 / (block * block) as f64;
    // vertical box sums with clamped borders
    let mut vsum = vec![0.0f64; w * h * 5];
    for x in 0..w {
        for c in 0..5 {
            let at = |y: isize| m[(y.clamp(0, h as isize - 1) as usize * w + x) * 5 + c] as f64;
            let mut acc: f64 = (-r..=r).map(at).sum();
            for y in 0..h as isize {
                vsum[(y as usize * w + x) * 5 + c] = acc;
                acc += at(y + r + 1) - at(y - r);
            }
        }
    }
    for y in 0..h {
        let row = &vsum[y * w * 5..][..w * 5];
        let at = |x: isize, c: usize| row[x.clamp(0, w as isize - 1) as usize * 5 + c];
        let mut acc = [0.0f64; 5];
        for (c, a) in acc.iter_mut().enumerate() {
            *a = (-r..=r).map(|x| at(x, c)).sum();
        }
        for x in 0..w as isize {
            let g11 = acc[0] * scale;
            let g12 = acc[1] * scale;
            let g22 = acc[2] * scale;
            let h1 = acc[3] * scale;
            let h2 = acc[4] * scale;
            let idet = 1.0 / (g11 * g22 - g12 * g12 + 1e-3);
            flow[y * w + x as usize] = [
                ((g11 * h2 - g12 * h1) * idet) as f32,
                ((g22 * h1 - g12 * h2) * idet) as f32,
            ];
            for (c, a) in acc.iter_mut().enumerate() {
                *a += at(x + r + 1, c) - at(x - r, c);
            }
        }
    }
}

/// Dense displacement field mapping `prev` onto `next`: `prev(p) ≈ next(p + v(p))`.
pub fn estimate_flow(prev: &ImageBuffer, next: &ImageBuffer, params: &FlowParams) -> Result<FlowField> {
    prev.ensure_same_shape(next)?;
    params.validate()?;
    let planes = [plane_of(prev), plane_of(next)];
    let (w0, h0) = (planes[0].width, planes[0].height);

    let mut layers = 1;
    let mut s = 1.0;
    while layers < params.levels {
        s *= params.pyramid_scale;
        if (w0 as f64 * s) < MIN_LEVEL_SIZE as f64 || (h0 as f64 * s) < MIN_LEVEL_SIZE as f64 {
            break;
        }
        layers += 1;
    }

    let mut flow: Vec<[f32; 2]> = Vec::new();
    let (mut fw, mut fh) = (0usize, 0usize);
    for level in (0..layers).rev() {
        let scale = params.pyramid_scale.powi(level as i32);
        let width = ((w0 as f64 * scale).round() as usize).max(1);
        let height = ((h0 as f64 * scale).round() as usize).max(1);

        let mut coeffs = Vec::with_capacity(2);
        for p in &planes {
            let level_plane = if level == 0 {
                Plane {
                    width: p.width,
                    height: p.height,
                    data: p.data.clone(),
                }
            } else {
                let sigma = (1.0 / scale - 1.0) * 0.5;
                let smoothed = smooth(p, sigma);
                Plane {
                    width,
                    height,
                    data: bilinear(&smoothed.data, w0, h0, 1, width, height),
                }
            };
            coeffs.push(poly_expansion(&level_plane, params.poly_n, params.poly_sigma));
        }

        flow = if flow.is_empty() {
            vec![[0.0; 2]; width * height]
        } else {
            let flat: Vec<f32> = flow.iter().flat_map(|v| *v).collect();
            let up = bilinear(&flat, fw, fh, 2, width, height);
            let k = (1.0 / params.pyramid_scale) as f32;
            up.chunks_exact(2).map(|c| [c[0] * k, c[1] * k]).collect()
        };
        fw = width;
        fh = height;

        let mut m = vec![0.0f32; width * height * 5];
        update_matrices(&coeffs[0], &coeffs[1], &flow, width, height, &mut m);
        for it in 0..params.iterations {
            solve_flow(&m, width, height, params.window_size, &mut flow);
            if it + 1 < params.iterations {
                update_matrices(&coeffs[0], &coeffs[1], &flow, width, height, &mut m);
            }
        }
    }
    Ok(FlowField::from_vectors(fw, fh, flow))
}
