//! Raster-scan embedding and extraction.
//!
//! Embedding predicts every pixel from its causal context in the original
//! cover image. Extraction predicts from the already-restored neighbours,
//! which at that point equal the cover values, so both sides see identical
//! predictions and the per-pixel rule tables invert exactly.

use crate::algorithm::Algorithm;
use crate::bitstream::BitStream;
use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::predictor::{error_vector_into, CausalContext, PredictorSet};
use crate::scheme::{Disposition, PixelAction, Scheme};

/// Sidecar payload describing one embedding: what was used, where it
/// stopped, and which pixels were guarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedMeta {
    pub algorithm: Algorithm,
    pub width: u32,
    pub height: u32,
    pub payload_bits: usize,
    /// 0-based linear index of the pixel that consumed the final payload
    /// bit, or `width * height` (one past the end) for an empty payload.
    pub last_index: usize,
    /// Ascending 0-based linear indices of guarded pixels encountered before
    /// the final bit was consumed.
    pub overhead: Vec<usize>,
}

impl EmbedMeta {
    /// The reserved `last_index` value meaning "nothing embedded".
    pub fn sentinel(width: u32, height: u32) -> usize {
        width as usize * height as usize
    }

    pub fn is_empty_payload(&self) -> bool {
        self.last_index == EmbedMeta::sentinel(self.width, self.height)
    }
}

#[derive(Debug, Clone)]
pub struct EmbedOutcome {
    pub stego: GrayImage,
    pub meta: EmbedMeta,
    pub bits_embedded: usize,
}

fn context_at(pixels: &[u8], width: usize, idx: usize) -> CausalContext {
    CausalContext {
        a: pixels[idx - 1],
        b: pixels[idx - width],
        c: pixels[idx - width - 1],
    }
}

fn require_cover_size(cover: &GrayImage) -> Result<()> {
    if cover.width() < 2 || cover.height() < 2 {
        return Err(Error::ImageTooSmall {
            width: cover.width(),
            height: cover.height(),
        });
    }
    Ok(())
}

/// Embeds `payload` into `cover`, returning the stego image and the sidecar
/// metadata needed for extraction.
///
/// The first row and first column are copied verbatim, as is every pixel
/// after the one that consumed the final payload bit.
pub fn embed(scheme: &dyn Scheme, cover: &GrayImage, payload: &BitStream) -> Result<EmbedOutcome> {
    require_cover_size(cover)?;

    let max_capacity = capacity(scheme, cover);
    if payload.bit_len() > max_capacity {
        return Err(Error::PayloadExceedsCapacity {
            payload_bits: payload.bit_len(),
            capacity: max_capacity,
        });
    }

    let width = cover.width() as usize;
    let kinds = scheme.algorithm().predictor_kinds();
    let mut stego = cover.as_slice().to_vec();
    let mut overhead = Vec::new();
    let mut last_index = EmbedMeta::sentinel(cover.width(), cover.height());
    let mut bit_cursor = 0usize;
    let mut errors = [0i32; 4];

    if !payload.is_empty() {
        'scan: for i in 2..=cover.height() {
            for j in 2..=cover.width() {
                let idx = cover.linear_index(i, j);
                let value = cover.as_slice()[idx];
                if scheme.is_guarded(value) {
                    overhead.push(idx);
                    continue;
                }
                let ctx = context_at(cover.as_slice(), width, idx);
                let errs = error_vector_into(kinds, ctx, value, &mut errors);
                let action = match scheme.disposition(errs) {
                    Disposition::Embed {
                        bit0_delta,
                        bit1_delta,
                    } => {
                        let bit = payload.bit(bit_cursor);
                        bit_cursor += 1;
                        PixelAction::Embed {
                            bit,
                            delta: if bit == 0 { bit0_delta } else { bit1_delta },
                        }
                    }
                    Disposition::Shift(delta) => PixelAction::Shift { delta },
                    Disposition::Skip => PixelAction::Skip,
                };
                let shifted = value as i32 + action.delta();
                debug_assert!((0..=255).contains(&shifted), "guard set let {value} escape");
                stego[idx] = shifted as u8;

                if bit_cursor == payload.bit_len() {
                    last_index = idx;
                    break 'scan;
                }
            }
        }
        // capacity >= payload bits, so the scan cannot run dry.
        debug_assert_eq!(bit_cursor, payload.bit_len());
    }

    let stego = GrayImage::new(cover.width(), cover.height(), stego)?;
    let meta = EmbedMeta {
        algorithm: scheme.algorithm().clone(),
        width: cover.width(),
        height: cover.height(),
        payload_bits: payload.bit_len(),
        last_index,
        overhead,
    };
    Ok(EmbedOutcome {
        stego,
        meta,
        bits_embedded: payload.bit_len(),
    })
}

/// Recovers the payload and the original cover image from a stego image and
/// its sidecar metadata.
pub fn extract(
    scheme: &dyn Scheme,
    stego: &GrayImage,
    meta: &EmbedMeta,
) -> Result<(BitStream, GrayImage)> {
    if meta.width != stego.width() || meta.height != stego.height() {
        return Err(Error::MetaMismatch(format!(
            "sidecar is for a {}x{} image, stego is {}x{}",
            meta.width,
            meta.height,
            stego.width(),
            stego.height()
        )));
    }
    if meta.algorithm != *scheme.algorithm() {
        return Err(Error::MetaMismatch(format!(
            "sidecar was written by {}, extracting with {}",
            meta.algorithm,
            scheme.algorithm()
        )));
    }

    if meta.is_empty_payload() {
        if meta.payload_bits != 0 {
            return Err(Error::PayloadShortfall {
                extracted: 0,
                expected: meta.payload_bits,
            });
        }
        return Ok((BitStream::from_bits(&[]), stego.clone()));
    }

    let width = stego.width() as usize;
    let kinds = scheme.algorithm().predictor_kinds();
    let mut recovered = stego.as_slice().to_vec();
    let mut bits = Vec::with_capacity(meta.payload_bits);
    let mut overhead_cursor = meta.overhead.iter().peekable();
    let mut errors = [0i32; 4];

    'scan: for i in 2..=stego.height() {
        for j in 2..=stego.width() {
            let idx = stego.linear_index(i, j);
            if overhead_cursor.peek() == Some(&&idx) {
                overhead_cursor.next();
                continue;
            }
            // Neighbours earlier in scan order are already restored.
            let ctx = context_at(&recovered, width, idx);
            let errs = error_vector_into(kinds, ctx, recovered[idx], &mut errors);
            let (bit, restore_delta) = scheme.classify_extract(errs)?;
            let restored = recovered[idx] as i32 + restore_delta;
            recovered[idx] = u8::try_from(restored).map_err(|_| {
                Error::InconsistentState(format!(
                    "restoring pixel ({i}, {j}) leaves [0, 255]: {restored}"
                ))
            })?;
            if let Some(bit) = bit {
                bits.push(bit);
            }
            if idx == meta.last_index {
                break 'scan;
            }
        }
    }

    if bits.len() < meta.payload_bits {
        return Err(Error::PayloadShortfall {
            extracted: bits.len(),
            expected: meta.payload_bits,
        });
    }
    bits.truncate(meta.payload_bits);

    let recovered = GrayImage::new(stego.width(), stego.height(), recovered)?;
    Ok((BitStream::from_bits(&bits), recovered))
}

/// Number of payload bits `cover` can carry: the count of scan positions the
/// rule table classifies as embeddable. Depends only on the cover image.
pub fn capacity(scheme: &dyn Scheme, cover: &GrayImage) -> usize {
    scan_dispositions(scheme, cover)
        .filter(|(_, d)| matches!(d, Disposition::Embed { .. }))
        .count()
}

/// Linear indices of every embeddable scan position, in scan order. An
/// `n`-bit payload lands on exactly the first `n` of these, independent of
/// the payload content.
pub fn embed_positions(scheme: &dyn Scheme, cover: &GrayImage) -> Vec<usize> {
    scan_dispositions(scheme, cover)
        .filter(|(_, d)| matches!(d, Disposition::Embed { .. }))
        .map(|(idx, _)| idx)
        .collect()
}

fn scan_dispositions<'a>(
    scheme: &'a dyn Scheme,
    cover: &'a GrayImage,
) -> impl Iterator<Item = (usize, Disposition)> + 'a {
    let kinds = scheme.algorithm().predictor_kinds();
    let width = cover.width() as usize;
    let pixels = cover.as_slice();
    (2..=cover.height()).flat_map(move |i| {
        (2..=cover.width()).filter_map(move |j| {
            let idx = (i as usize - 1) * width + (j as usize - 1);
            let value = pixels[idx];
            if scheme.is_guarded(value) {
                return None;
            }
            let mut errors = [0i32; 4];
            let errs = error_vector_into(kinds, context_at(pixels, width, idx), value, &mut errors);
            Some((idx, scheme.disposition(errs)))
        })
    })
}

/// Per-position polarity census of the prediction-error vectors a predictor
/// set produces over a cover image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PolarityStats {
    /// Vectors containing a zero with all other errors on one side: the
    /// embeddable class.
    pub has_zero_unipolar: usize,
    pub all_positive: usize,
    pub all_negative: usize,
    /// Bipolar vectors: strictly positive and strictly negative errors.
    pub mixed: usize,
    /// Positions excluded because the cover value is 0 or 255.
    pub guard: usize,
}

impl PolarityStats {
    pub fn total(&self) -> usize {
        self.has_zero_unipolar + self.all_positive + self.all_negative + self.mixed + self.guard
    }

    /// All unipolar positions, zeros allowed.
    pub fn unipolar_total(&self) -> usize {
        self.has_zero_unipolar + self.all_positive + self.all_negative
    }
}

/// Counts the polarity classes over every scan position of `cover`.
pub fn polarity_stats(set: &PredictorSet, cover: &GrayImage) -> PolarityStats {
    let width = cover.width() as usize;
    let pixels = cover.as_slice();
    let mut stats = PolarityStats::default();
    let mut errors = [0i32; 4];

    for i in 2..=cover.height() {
        for j in 2..=cover.width() {
            let idx = (i as usize - 1) * width + (j as usize - 1);
            let value = pixels[idx];
            if value == 0 || value == 255 {
                stats.guard += 1;
                continue;
            }
            let errs = error_vector_into(set.kinds(), context_at(pixels, width, idx), value, &mut errors);
            let has_zero = errs.contains(&0);
            let has_pos = errs.iter().any(|&e| e > 0);
            let has_neg = errs.iter().any(|&e| e < 0);
            if has_pos && has_neg {
                stats.mixed += 1;
            } else if has_zero {
                stats.has_zero_unipolar += 1;
            } else if has_pos {
                stats.all_positive += 1;
            } else {
                stats.all_negative += 1;
            }
        }
    }
    stats
}
