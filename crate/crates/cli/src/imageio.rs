//! Lossless image files: PNG through the `image` crate and binary PPM (P6)
//! handled here byte for byte.
//!
//! PPM output is always `P6\n<width> <height>\n255\n` followed by raw RGB
//! triples in raster order. JPEG is refused outright since lossy
//! recompression wipes the blue-channel LSBs.

use std::fs;
use std::path::Path;

use image::{ColorType, ImageFormat};
use tstego_core::RgbImage;

use crate::error::{CliError, Result};

const PNG_MAGIC: &[u8] = b"\x89PNG\r\n\x1a\n";
const JPEG_MAGIC: &[u8] = &[0xFF, 0xD8, 0xFF];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Png,
    Ppm,
}

impl FileFormat {
    /// Picks the output format from a path's extension.
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("png") => Ok(FileFormat::Png),
            Some("ppm") | Some("pnm") => Ok(FileFormat::Ppm),
            Some("jpg") | Some("jpeg") => Err(CliError::unsupported(
                path,
                "JPEG is lossy and destroys LSB payloads; write .png or .ppm",
            )),
            _ => Err(CliError::unsupported(
                path,
                "unknown output format; use .png or .ppm",
            )),
        }
    }
}

pub fn read_image(path: &Path) -> Result<RgbImage> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    if bytes.starts_with(b"P6") {
        decode_ppm(&bytes).map_err(|reason| CliError::unsupported(path, reason))
    } else if bytes.starts_with(PNG_MAGIC) {
        decode_png(path, &bytes)
    } else if bytes.starts_with(JPEG_MAGIC) {
        Err(CliError::unsupported(
            path,
            "JPEG input rejected: lossy compression destroys LSB payloads; convert to PNG first",
        ))
    } else {
        Err(CliError::unsupported(
            path,
            "not a PNG or binary PPM (P6) file",
        ))
    }
}

pub fn write_image(path: &Path, img: &RgbImage) -> Result<()> {
    let bytes = match FileFormat::from_path(path)? {
        FileFormat::Ppm => encode_ppm(img),
        FileFormat::Png => encode_png(img).map_err(|reason| CliError::unsupported(path, reason))?,
    };
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn decode_png(path: &Path, bytes: &[u8]) -> Result<RgbImage> {
    let dynamic = image::load_from_memory_with_format(bytes, ImageFormat::Png)
        .map_err(|e| CliError::unsupported(path, e.to_string()))?;
    match dynamic.color() {
        ColorType::Rgb8 => {}
        c if c.has_alpha() => {
            return Err(CliError::unsupported(
                path,
                "images with an alpha channel are not supported; flatten to RGB first",
            ))
        }
        c => {
            return Err(CliError::unsupported(
                path,
                format!("unsupported pixel type {c:?}; need 8-bit RGB"),
            ))
        }
    }
    let (w, h) = (dynamic.width() as usize, dynamic.height() as usize);
    RgbImage::from_interleaved(h, w, dynamic.as_bytes())
        .map_err(|e| CliError::unsupported(path, e.to_string()))
}

pub fn encode_png(img: &RgbImage) -> std::result::Result<Vec<u8>, String> {
    let buf = to_image_buffer(img);
    let mut out = std::io::Cursor::new(Vec::new());
    buf.write_to(&mut out, ImageFormat::Png)
        .map_err(|e| e.to_string())?;
    Ok(out.into_inner())
}

pub fn to_image_buffer(img: &RgbImage) -> image::RgbImage {
    image::RgbImage::from_raw(
        img.width() as u32,
        img.height() as u32,
        img.to_interleaved(),
    )
    .expect("buffer length matches dimensions")
}

pub fn from_image_buffer(buf: &image::RgbImage) -> RgbImage {
    RgbImage::from_interleaved(buf.height() as usize, buf.width() as usize, buf.as_raw())
        .expect("buffer length matches dimensions")
}

pub fn encode_ppm(img: &RgbImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend(img.to_interleaved());
    out
}

/// Parses a binary PPM. Header tokens may be separated by any whitespace
/// and `#` comments; exactly one whitespace byte follows the maxval.
pub fn decode_ppm(bytes: &[u8]) -> std::result::Result<RgbImage, String> {
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in fields.iter_mut() {
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err("malformed PPM header".into());
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or("PPM header value out of range")?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(format!("PPM maxval {maxval} unsupported; need 255"));
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err("malformed PPM header".into());
    }
    pos += 1;
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(3))
        .ok_or("PPM dimensions overflow")?;
    let data = &bytes[pos..];
    if data.len() < expected {
        return Err(format!(
            "PPM pixel data truncated: {} of {expected} bytes",
            data.len()
        ));
    }
    RgbImage::from_interleaved(height, width, &data[..expected]).map_err(|e| e.to_string())
}
