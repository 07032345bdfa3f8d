//! PNG/JPEG loading and saving. Everything is loaded as 8-bit RGB; alpha is dropped.

use std::io::Cursor;
use std::path::Path;

use image::codecs::jpeg::JpegEncoder;
use image::{ColorType, DynamicImage, ImageEncoder, ImageFormat, RgbImage};

use super::ImageBuffer;
use crate::error::{Error, Result};

pub fn load(path: &Path) -> Result<ImageBuffer> {
    let img = image::open(path).map_err(|source| Error::Image {
        path: path.to_path_buf(),
        source,
    })?;
    from_dynamic(img)
}

pub fn decode(bytes: &[u8]) -> Result<ImageBuffer> {
    let img = image::load_from_memory(bytes).map_err(|source| Error::Image {
        path: "<memory>".into(),
        source,
    })?;
    from_dynamic(img)
}

fn from_dynamic(img: DynamicImage) -> Result<ImageBuffer> {
    let rgb = img.to_rgb8();
    let (w, h) = rgb.dimensions();
    ImageBuffer::new(w as usize, h as usize, 3, rgb.into_raw())
}

fn to_rgb(img: &ImageBuffer) -> RgbImage {
    let data = if img.channels() == 3 {
        img.data().to_vec()
    } else {
        img.data().iter().flat_map(|&v| [v, v, v]).collect()
    };
    RgbImage::from_raw(img.width() as u32, img.height() as u32, data).expect("buffer length checked at construction")
}

/// Saves as PNG, or JPEG when the extension says so.
pub fn save(img: &ImageBuffer, path: &Path) -> Result<()> {
    let format = ImageFormat::from_path(path).unwrap_or(ImageFormat::Png);
    to_rgb(img)
        .save_with_format(path, format)
        .map_err(|source| Error::Image {
            path: path.to_path_buf(),
            source,
        })
}

pub fn encode_jpeg(img: &ImageBuffer, quality: u8) -> Result<Vec<u8>> {
    let rgb = to_rgb(img);
    let mut out = Cursor::new(Vec::new());
    JpegEncoder::new_with_quality(&mut out, quality)
        .write_image(rgb.as_raw(), rgb.width(), rgb.height(), ColorType::Rgb8.into())
        .map_err(|source| Error::Image {
            path: "<memory>".into(),
            source,
        })?;
    Ok(out.into_inner())
}
