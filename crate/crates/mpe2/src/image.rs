//! 8-bit grayscale raster and bit-exact binary PGM (P5) I/O.
//!
//! Only maxval 255 is accepted. The writer emits the canonical form
//! `P5\n<width> <height>\n255\n` followed by raw row-major bytes, so a
//! load/save round trip reproduces the written file byte for byte.

use crate::error::{Error, Result};

/// An 8-bit grayscale image, row-major with the origin at the top left.
///
/// The pixel buffer is immutable after construction; embedding builds a new
/// image rather than mutating a shared one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Builds an image from row-major pixel data.
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::PgmFormat(format!(
                "dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        let expected = (width as usize)
            .checked_mul(height as usize)
            .ok_or_else(|| Error::PgmFormat("image dimensions overflow".into()))?;
        if pixels.len() != expected {
            return Err(Error::PgmFormat(format!(
                "pixel buffer holds {} bytes, {width}x{height} needs {expected}",
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Pixel at row `i`, column `j`, both 1-based.
    pub fn pixel(&self, i: u32, j: u32) -> Result<u8> {
        if i < 1 || i > self.height || j < 1 || j > self.width {
            return Err(Error::OutOfBounds {
                row: i,
                col: j,
                width: self.width,
                height: self.height,
            });
        }
        Ok(self.pixels[self.linear_index(i, j)])
    }

    /// Row-major linear index of 1-based (i, j).
    pub fn linear_index(&self, i: u32, j: u32) -> usize {
        (i as usize - 1) * self.width as usize + (j as usize - 1)
    }

    /// 1-based (i, j) of a row-major linear index.
    pub fn coords(&self, index: usize) -> (u32, u32) {
        let w = self.width as usize;
        ((index / w) as u32 + 1, (index % w) as u32 + 1)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.pixels
    }

    pub(crate) fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }
}

/// Decodes a binary PGM (P5) with maxval 255.
///
/// Comment lines starting with `#` are permitted anywhere in the header.
/// A single whitespace byte separates the maxval from the raster data.
pub fn load_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut pos = 0usize;

    if bytes.len() < 2 || &bytes[0..2] != b"P5" {
        return Err(Error::PgmFormat("missing P5 magic".into()));
    }
    pos += 2;

    let width = read_header_number(bytes, &mut pos)?;
    let height = read_header_number(bytes, &mut pos)?;
    let maxval = read_header_number(bytes, &mut pos)?;
    if maxval != 255 {
        return Err(Error::PgmFormat(format!(
            "maxval must be 255, got {maxval}"
        )));
    }
    if width == 0 || height == 0 {
        return Err(Error::PgmFormat(format!(
            "dimensions must be at least 1x1, got {width}x{height}"
        )));
    }

    // Exactly one whitespace byte between the header and the raster.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::PgmFormat("missing whitespace before raster".into())),
    }

    let expected = (width as usize)
        .checked_mul(height as usize)
        .ok_or_else(|| Error::PgmFormat("image dimensions overflow".into()))?;
    let data = &bytes[pos..];
    if data.len() < expected {
        return Err(Error::PgmFormat(format!(
            "truncated raster: {} of {expected} bytes",
            data.len()
        )));
    }

    GrayImage::new(width, height, data[..expected].to_vec())
}

/// Encodes an image in the canonical binary PGM form.
pub fn save_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.pixel_count());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.as_slice());
    out
}

pub fn load_pgm_file(path: &std::path::Path) -> Result<GrayImage> {
    let bytes = std::fs::read(path)?;
    load_pgm(&bytes)
}

/// Skips whitespace and `#` comment lines, then parses a decimal number.
fn read_header_number(bytes: &[u8], pos: &mut usize) -> Result<u32> {
    loop {
        match bytes.get(*pos) {
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(b'#') => {
                while let Some(&b) = bytes.get(*pos) {
                    *pos += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            Some(_) => break,
            None => return Err(Error::PgmFormat("truncated header".into())),
        }
    }

    let start = *pos;
    while let Some(b) = bytes.get(*pos) {
        if b.is_ascii_digit() {
            *pos += 1;
        } else {
            break;
        }
    }
    if *pos == start {
        return Err(Error::PgmFormat("non-numeric header token".into()));
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::PgmFormat("header number out of range".into()))
}
