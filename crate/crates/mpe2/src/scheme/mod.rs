//! Embedding strategies behind a common trait.
//!
//! Each strategy owns one pair of rule tables: a forward table that maps a
//! pixel's prediction-error vector to an embed, shift, or skip decision, and
//! an inverse table that recovers the decision (and the carried bit) from the
//! stego errors. Every table adjusts all prediction errors of a pixel by one
//! shared delta, which is what keeps extraction independent of knowing which
//! predictor carried the bit.
//!
//! Strategies are registered by name and built at runtime from an
//! [`Algorithm`] descriptor.

mod mpe;
mod mpe2;

pub use mpe::{MpeThreeBin, MpeTwoBin};
pub use mpe2::{Mpe2OneBin, Mpe2ThreeBin, Mpe2TwoBin};

use crate::algorithm::{Algorithm, Family, Variant};
use crate::error::{Error, Result};
use crate::predictor::PredictorSet;

/// What the forward rule table decides for one pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Disposition {
    /// The pixel can carry a bit; the pixel moves by `bit0_delta` or
    /// `bit1_delta` depending on the bit value.
    Embed { bit0_delta: i32, bit1_delta: i32 },
    /// The pixel is shifted to vacate a carrier bin.
    Shift(i32),
    /// Bipolar errors; the pixel is left untouched.
    Skip,
}

/// The resolved action at one pixel during embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelAction {
    Embed { bit: u8, delta: i32 },
    Shift { delta: i32 },
    Skip,
    /// Cover value in the guard set; recorded in the overhead list and left
    /// untouched.
    Guard,
}

impl PixelAction {
    pub fn delta(&self) -> i32 {
        match *self {
            PixelAction::Embed { delta, .. } | PixelAction::Shift { delta } => delta,
            PixelAction::Skip | PixelAction::Guard => 0,
        }
    }
}

/// One reversible embedding strategy: a forward rule table, its inverse, and
/// the guard set that keeps every shifted pixel inside [0, 255].
pub trait Scheme: Send + Sync {
    /// The configuration this strategy was built from.
    fn algorithm(&self) -> &Algorithm;

    /// Forward classification of a cover prediction-error vector.
    fn disposition(&self, errors: &[i32]) -> Disposition;

    /// Inverse classification of a stego prediction-error vector: the
    /// extracted bit (if the position carried one) and the delta that
    /// restores the cover pixel.
    fn classify_extract(&self, errors: &[i32]) -> Result<(Option<u8>, i32)>;

    /// Cover intensities excluded from processing because some permitted
    /// delta would leave [0, 255].
    fn guard_values(&self) -> &'static [u8];

    /// Largest per-pixel |delta| this strategy can apply.
    fn max_pixel_delta(&self) -> u8;

    fn is_guarded(&self, value: u8) -> bool {
        self.guard_values().contains(&value)
    }

    /// Resolves the forward classification against the next payload bit.
    /// Errors with [`Error::MissingBit`] if the position is embeddable but no
    /// bit was supplied.
    fn classify_embed(&self, errors: &[i32], next_bit: Option<u8>) -> Result<PixelAction> {
        match self.disposition(errors) {
            Disposition::Embed {
                bit0_delta,
                bit1_delta,
            } => match next_bit {
                Some(0) => Ok(PixelAction::Embed {
                    bit: 0,
                    delta: bit0_delta,
                }),
                Some(_) => Ok(PixelAction::Embed {
                    bit: 1,
                    delta: bit1_delta,
                }),
                None => Err(Error::MissingBit),
            },
            Disposition::Shift(delta) => Ok(PixelAction::Shift { delta }),
            Disposition::Skip => Ok(PixelAction::Skip),
        }
    }
}

/// Guard set for a bin variant, derived from the variant's delta range:
/// an intensity is guarded when some permitted delta would leave [0, 255].
pub fn guard_set(variant: Variant) -> &'static [u8] {
    match variant {
        // Deltas in [-1, +1].
        Variant::OneBin => &[0, 255],
        // Deltas in [-2, +1].
        Variant::TwoBin => &[0, 1, 255],
        // Deltas in [-2, +2].
        Variant::ThreeBin => &[0, 1, 254, 255],
    }
}

/// A named strategy available to the CLI and the bench harness.
pub struct SchemeEntry {
    pub name: &'static str,
    pub family: Family,
    pub variant: Variant,
    pub summary: &'static str,
}

/// The strategy registry, in the order reports list them.
pub const REGISTRY: &[SchemeEntry] = &[
    SchemeEntry {
        name: "mpe2-1bin",
        family: Family::Mpe2,
        variant: Variant::OneBin,
        summary: "multi-predictor, embeds at error 0 only",
    },
    SchemeEntry {
        name: "mpe2-2bin",
        family: Family::Mpe2,
        variant: Variant::TwoBin,
        summary: "dual-predictor, embeds at errors 0 and -1",
    },
    SchemeEntry {
        name: "mpe2-3bin",
        family: Family::Mpe2,
        variant: Variant::ThreeBin,
        summary: "dual-predictor, embeds at errors -1, 0, and +1",
    },
    SchemeEntry {
        name: "mpe-2bin",
        family: Family::MpeBaseline,
        variant: Variant::TwoBin,
        summary: "single-predictor baseline, embeds at errors 0 and -1",
    },
    SchemeEntry {
        name: "mpe-3bin",
        family: Family::MpeBaseline,
        variant: Variant::ThreeBin,
        summary: "single-predictor baseline, embeds at errors -1, 0, and +1",
    },
];

pub fn lookup(name: &str) -> Option<&'static SchemeEntry> {
    REGISTRY.iter().find(|entry| entry.name == name)
}

impl SchemeEntry {
    /// Builds the algorithm descriptor for this entry. `predictors` applies
    /// to the mpe2 family only and defaults to MED + mean; the baseline
    /// rejects an explicit predictor list other than MED.
    pub fn algorithm(&self, predictors: Option<PredictorSet>) -> Result<Algorithm> {
        match self.family {
            Family::Mpe2 => Algorithm::mpe2(self.variant, predictors.unwrap_or_default()),
            Family::MpeBaseline => {
                if predictors.is_some() {
                    return Err(Error::AlgorithmConfig(format!(
                        "{} uses the MED predictor implicitly; do not pass a predictor list",
                        self.name
                    )));
                }
                Algorithm::mpe_baseline(self.variant)
            }
        }
    }
}

/// Builds the strategy for a validated algorithm descriptor.
pub fn build(algorithm: &Algorithm) -> Box<dyn Scheme> {
    match (algorithm.family(), algorithm.variant()) {
        (Family::Mpe2, Variant::OneBin) => Box::new(Mpe2OneBin::new(algorithm.clone())),
        (Family::Mpe2, Variant::TwoBin) => Box::new(Mpe2TwoBin::new(algorithm.clone())),
        (Family::Mpe2, Variant::ThreeBin) => Box::new(Mpe2ThreeBin::new(algorithm.clone())),
        (Family::MpeBaseline, Variant::TwoBin) => Box::new(MpeTwoBin::new(algorithm.clone())),
        (Family::MpeBaseline, Variant::ThreeBin) => Box::new(MpeThreeBin::new(algorithm.clone())),
        (Family::MpeBaseline, Variant::OneBin) => {
            unreachable!("Algorithm construction rejects the 1bin baseline")
        }
    }
}
