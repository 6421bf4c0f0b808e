//! Stego quality metrics.

use crate::algorithm::Variant;
use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Peak signal-to-noise ratio in decibels: `10 * log10(255^2 / MSE)`.
/// Identical images have zero MSE and report infinity.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch {
            width_a: a.width(),
            height_a: a.height(),
            width_b: b.width(),
            height_b: b.height(),
        });
    }
    let sum_sq: u64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    if sum_sq == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sum_sq as f64 / a.pixel_count() as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

/// Worst-case PSNR of a variant under the pessimistic model: each polarity
/// class equally likely and every payload bit a 1, so a third of the pixels
/// move by the variant's positive reach, a third by its negative reach, and
/// a third not at all.
pub fn theoretical_floor(variant: Variant) -> f64 {
    let (pos_reach, neg_reach) = match variant {
        Variant::OneBin => (1.0f64, 1.0f64),
        Variant::TwoBin => (1.0, 2.0),
        Variant::ThreeBin => (2.0, 2.0),
    };
    let mse = (pos_reach * pos_reach + neg_reach * neg_reach) / 3.0;
    10.0 * (255.0f64 * 255.0 / mse).log10()
}

/// Formats a PSNR value for reports: four decimals, or the token `inf`.
pub fn format_psnr(value: f64) -> String {
    if value.is_infinite() {
        "inf".to_string()
    } else {
        format!("{value:.4}")
    }
}
