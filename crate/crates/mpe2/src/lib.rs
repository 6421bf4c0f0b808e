//! Reversible data hiding for 8-bit grayscale images.
//!
//! Embeds payload bits by shifting prediction-error histograms computed from
//! two (or up to four) causal predictors per pixel, recovers both the
//! payload and the bit-exact cover image at extraction, and never transmits
//! per-pixel predictor identities: a shared set of classification rules
//! makes the decision recoverable from the stego errors alone.
//!
//! The interchangeable strategies live behind [`scheme::Scheme`] and are
//! selected by name through [`scheme::REGISTRY`]. [`engine`] drives the
//! raster scan, [`image`] and [`sidecar`] own the on-disk formats, and
//! [`bench`] reproduces capacity/PSNR tables over a corpus.

pub mod algorithm;
pub mod bench;
pub mod bitstream;
pub mod corpus;
pub mod engine;
mod error;
pub mod image;
pub mod metrics;
pub mod predictor;
pub mod scheme;
pub mod sidecar;

pub use algorithm::{Algorithm, Family, Variant};
pub use bitstream::BitStream;
pub use engine::{capacity, embed, extract, polarity_stats, EmbedMeta, EmbedOutcome};
pub use error::{Error, Result};
pub use image::{load_pgm, save_pgm, GrayImage};
pub use predictor::{PredictorKind, PredictorSet};
pub use scheme::{guard_set, Scheme};
