//! Binary PGM (P5, maxval 255) and 8-bit PNG grayscale I/O.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

use super::plane::{quantize_sample, ImagePlane};

/// Rec.601 luma weights used for color inputs.
pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

fn format_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Format { path: path.to_path_buf(), reason: reason.into() }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

pub fn decode_pgm(bytes: &[u8], path: &Path) -> Result<ImagePlane> {
    let mut pos = 0;
    let mut fields = Vec::with_capacity(4);
    while fields.len() < 4 {
        // skip whitespace and comments
        while pos < bytes.len() {
            match bytes[pos] {
                b'#' => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => pos += 1,
                _ => break,
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'#' {
            pos += 1;
        }
        if start == pos {
            return Err(format_err(path, "truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| format_err(path, "non-ASCII header"))?);
    }
    if fields[0] != "P5" {
        return Err(format_err(path, format!("magic `{}`, expected P5", fields[0])));
    }
    let parse = |s: &str, what: &str| -> Result<usize> {
        s.parse::<usize>().map_err(|_| format_err(path, format!("bad {what} `{s}`")))
    };
    let width = parse(fields[1], "width")?;
    let height = parse(fields[2], "height")?;
    let maxval = parse(fields[3], "maxval")?;
    if maxval != 255 {
        return Err(format_err(path, format!("maxval {maxval}, only 255 is supported")));
    }
    if width == 0 || height == 0 {
        return Err(format_err(path, "zero image dimension"));
    }
    // exactly one whitespace byte separates the header from the raster
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(format_err(path, "missing raster separator"));
    }
    pos += 1;
    let raster = &bytes[pos..];
    if raster.len() < width * height {
        return Err(format_err(path, format!("raster has {} of {} bytes", raster.len(), width * height)));
    }
    let data = raster[..width * height].iter().map(|&b| b as f64).collect();
    ImagePlane::new(height, width, data)
}

pub fn encode_pgm(image: &ImagePlane) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend(image.data().iter().map(|&v| quantize_sample(v)));
    out
}

pub fn load_pgm(path: impl AsRef<Path>) -> Result<ImagePlane> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(io_err(path))?;
    decode_pgm(&bytes, path)
}

pub fn save_pgm(image: &ImagePlane, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_pgm(image)).map_err(io_err(path))
}

pub fn load_png(path: impl AsRef<Path>) -> Result<ImagePlane> {
    let path = path.as_ref();
    let img = image::open(path).map_err(|source| Error::Codec { path: path.to_path_buf(), source })?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data: Vec<f64> = if img.color().has_color() {
        img.to_rgb8()
            .pixels()
            .map(|p| LUMA_WEIGHTS.iter().zip(p.0).map(|(w, v)| w * v as f64).sum())
            .collect()
    } else {
        img.to_luma8().pixels().map(|p| p.0[0] as f64).collect()
    };
    ImagePlane::new(h, w, data)
}

pub fn save_png(image: &ImagePlane, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let buf: Vec<u8> = image.data().iter().map(|&v| quantize_sample(v)).collect();
    let gray = image::GrayImage::from_raw(image.width() as u32, image.height() as u32, buf)
        .expect("buffer sized from the plane");
    gray.save_with_format(path, image::ImageFormat::Png)
        .map_err(|source| Error::Codec { path: path.to_path_buf(), source })
}

/// Dispatches on the file extension: `.png` via the PNG codec, anything
/// else as binary PGM.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImagePlane> {
    let path = path.as_ref();
    if is_png(path) {
        load_png(path)
    } else {
        load_pgm(path)
    }
}

pub fn save_image(image: &ImagePlane, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if is_png(path) {
        save_png(image, path)
    } else {
        save_pgm(image, path)
    }
}

fn is_png(path: &Path) -> bool {
    path.extension().and_then(|e| e.to_str()).is_some_and(|e| e.eq_ignore_ascii_case("png"))
}
