//! Single-predictor baseline rule tables (MED only).
//!
//! The two-bin baseline embeds at errors 0 and -1 and shifts everything else
//! by one: positives right, values below -1 left. The three-bin baseline
//! embeds at -1, 0, and +1 and shifts out-of-bin errors by two.

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::scheme::{Disposition, Scheme};

fn inconsistent(errors: &[i32]) -> Error {
    Error::InconsistentState(format!("stego errors {errors:?} match no rule"))
}

/// Classic modification-of-prediction-errors embedding at bins 0 and -1.
pub struct MpeTwoBin {
    algorithm: Algorithm,
}

impl MpeTwoBin {
    pub fn new(algorithm: Algorithm) -> Self {
        MpeTwoBin { algorithm }
    }
}

impl Scheme for MpeTwoBin {
    fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }

    fn disposition(&self, errors: &[i32]) -> Disposition {
        debug_assert_eq!(errors.len(), 1);
        match errors[0] {
            0 => Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: 1,
            },
            -1 => Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: -1,
            },
            e if e > 0 => Disposition::Shift(1),
            _ => Disposition::Shift(-1),
        }
    }

    fn classify_extract(&self, errors: &[i32]) -> Result<(Option<u8>, i32)> {
        debug_assert_eq!(errors.len(), 1);
        // Every stego error value is reachable; the map is total.
        Ok(match errors[0] {
            0 | -1 => (Some(0), 0),
            1 => (Some(1), -1),
            -2 => (Some(1), 1),
            e if e >= 2 => (None, -1),
            _ => (None, 1),
        })
    }

    fn guard_values(&self) -> &'static [u8] {
        // Deltas span [-1, +1].
        &[0, 255]
    }

    fn max_pixel_delta(&self) -> u8 {
        1
    }
}

/// Baseline extended to bins -1, 0, and +1, shifting out-of-bin errors by 2.
pub struct MpeThreeBin {
    algorithm: Algorithm,
}

impl MpeThreeBin {
    pub fn new(algorithm: Algorithm) -> Self {
        MpeThreeBin { algorithm }
    }
}

impl Scheme for MpeThreeBin {
    fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }

    fn disposition(&self, errors: &[i32]) -> Disposition {
        debug_assert_eq!(errors.len(), 1);
        match errors[0] {
            0 => Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: 1,
            },
            1 => Disposition::Embed {
                bit0_delta: 1,
                bit1_delta: 2,
            },
            -1 => Disposition::Embed {
                bit0_delta: -1,
                bit1_delta: -2,
            },
            e if e > 1 => Disposition::Shift(2),
            _ => Disposition::Shift(-2),
        }
    }

    fn classify_extract(&self, errors: &[i32]) -> Result<(Option<u8>, i32)> {
        debug_assert_eq!(errors.len(), 1);
        match errors[0] {
            0 => Ok((Some(0), 0)),
            1 => Ok((Some(1), -1)),
            2 => Ok((Some(0), -1)),
            3 => Ok((Some(1), -2)),
            -2 => Ok((Some(0), 1)),
            -3 => Ok((Some(1), 2)),
            e if e >= 4 => Ok((None, -2)),
            e if e <= -4 => Ok((None, 2)),
            // -1 cannot survive embedding: the -1 bin moves left and
            // deeper values move left by 2.
            _ => Err(inconsistent(errors)),
        }
    }

    fn guard_values(&self) -> &'static [u8] {
        // Deltas span [-2, +2].
        &[0, 1, 254, 255]
    }

    fn max_pixel_delta(&self) -> u8 {
        2
    }
}
