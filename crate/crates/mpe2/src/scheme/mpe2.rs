//! Dual- and multi-predictor rule tables.
//!
//! All rules share one structure: a pixel is eligible to carry a bit when a
//! carrier bin value appears in its error vector and the remaining errors do
//! not contradict the bin's side; unipolar out-of-bin vectors are shifted
//! away from the carrier bins; bipolar vectors are left untouched. Because
//! the pixel moves by a single delta, every prediction error moves with it,
//! and the inverse table below reads the decision straight from the stego
//! errors.

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::scheme::{guard_set, Disposition, Scheme};

#[cfg(test)]
use crate::scheme::PixelAction as _PixelActionForDocs;

fn inconsistent(errors: &[i32]) -> Error {
    Error::InconsistentState(format!("stego errors {errors:?} match no rule"))
}

/// Embeds at prediction error 0 only, with 2 to 4 predictors.
pub struct Mpe2OneBin {
    algorithm: Algorithm,
}

impl Mpe2OneBin {
    pub fn new(algorithm: Algorithm) -> Self {
        Mpe2OneBin { algorithm }
    }
}

impl Scheme for Mpe2OneBin {
    fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }

    fn disposition(&self, errors: &[i32]) -> Disposition {
        let mut has_zero = false;
        let mut has_pos = false;
        let mut has_neg = false;
        for &e in errors {
            match e.cmp(&0) {
                std::cmp::Ordering::Equal => has_zero = true,
                std::cmp::Ordering::Greater => has_pos = true,
                std::cmp::Ordering::Less => has_neg = true,
            }
        }
        if has_pos && has_neg {
            Disposition::Skip
        } else if has_zero {
            // An all-zero vector counts as positive-side.
            let sign = if has_neg { -1 } else { 1 };
            Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: sign,
            }
        } else if has_pos {
            Disposition::Shift(1)
        } else {
            Disposition::Shift(-1)
        }
    }

    fn classify_extract(&self, errors: &[i32]) -> Result<(Option<u8>, i32)> {
        let has = |v: i32| errors.contains(&v);
        let all = |f: &dyn Fn(i32) -> bool| errors.iter().all(|&e| f(e));

        if errors.iter().any(|&e| e > 0) && errors.iter().any(|&e| e < 0) {
            return Ok((None, 0)); // bipolar, untouched
        }
        if has(0) {
            return Ok((Some(0), 0));
        }
        if has(1) && all(&|e| e >= 1) {
            return Ok((Some(1), -1));
        }
        // The all "-1" vector is unreachable: an all-zero cover vector embeds
        // on the positive side.
        if has(-1) && all(&|e| e <= -1) && errors.iter().any(|&e| e <= -2) {
            return Ok((Some(1), 1));
        }
        if all(&|e| e >= 2) {
            return Ok((None, -1));
        }
        if all(&|e| e <= -2) {
            return Ok((None, 1));
        }
        Err(inconsistent(errors))
    }

    fn guard_values(&self) -> &'static [u8] {
        guard_set(self.algorithm.variant())
    }

    fn max_pixel_delta(&self) -> u8 {
        1
    }
}

/// Embeds at prediction errors 0 and -1, two predictors.
pub struct Mpe2TwoBin {
    algorithm: Algorithm,
}

impl Mpe2TwoBin {
    pub fn new(algorithm: Algorithm) -> Self {
        Mpe2TwoBin { algorithm }
    }
}

impl Scheme for Mpe2TwoBin {
    fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }

    fn disposition(&self, errors: &[i32]) -> Disposition {
        debug_assert_eq!(errors.len(), 2);
        let (e1, e2) = (errors[0], errors[1]);

        // Zero bin; a zero paired with a zero companion routes here.
        if e1 == 0 && e2 >= 0 || e2 == 0 && e1 > 0 {
            return Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: 1,
            };
        }
        if e1 == 0 && e2 < 0 || e2 == 0 && e1 < 0 {
            return Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: -1,
            };
        }
        // -1 bin; only a strictly negative companion keeps the pair unipolar.
        if e1 == -1 && e2 < 0 || e2 == -1 && e1 < -1 {
            return Disposition::Embed {
                bit0_delta: -1,
                bit1_delta: -2,
            };
        }
        if e1 > 0 && e2 > 0 {
            return Disposition::Shift(1);
        }
        // The -1 values are consumed above, so the negative shift moves by 2.
        if e1 < -1 && e2 < -1 {
            return Disposition::Shift(-2);
        }
        Disposition::Skip
    }

    fn classify_extract(&self, errors: &[i32]) -> Result<(Option<u8>, i32)> {
        debug_assert_eq!(errors.len(), 2);
        let (e1, e2) = (errors[0], errors[1]);

        // A remaining zero always means an untouched zero-bin pixel.
        if e1 == 0 || e2 == 0 {
            return Ok((Some(0), 0));
        }
        // Zero bin, bit 1.
        if e1 == 1 && e2 >= 1 || e2 == 1 && e1 >= 2 {
            return Ok((Some(1), -1));
        }
        if e1 == -1 && e2 <= -2 || e2 == -1 && e1 <= -2 {
            return Ok((Some(1), 1));
        }
        // -1 bin.
        if e1 == -2 && e2 <= -2 || e2 == -2 && e1 <= -3 {
            return Ok((Some(0), 1));
        }
        if e1 == -3 && e2 <= -3 || e2 == -3 && e1 <= -4 {
            return Ok((Some(1), 2));
        }
        // Shifts.
        if e1 >= 2 && e2 >= 2 {
            return Ok((None, -1));
        }
        if e1 <= -4 && e2 <= -4 {
            return Ok((None, 2));
        }
        if (e1 > 0) != (e2 > 0) {
            return Ok((None, 0)); // bipolar, untouched
        }
        Err(inconsistent(errors))
    }

    fn guard_values(&self) -> &'static [u8] {
        guard_set(self.algorithm.variant())
    }

    fn max_pixel_delta(&self) -> u8 {
        2
    }
}

/// Embeds at prediction errors -1, 0, and +1, two predictors.
pub struct Mpe2ThreeBin {
    algorithm: Algorithm,
}

impl Mpe2ThreeBin {
    pub fn new(algorithm: Algorithm) -> Self {
        Mpe2ThreeBin { algorithm }
    }
}

impl Scheme for Mpe2ThreeBin {
    fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }

    fn disposition(&self, errors: &[i32]) -> Disposition {
        debug_assert_eq!(errors.len(), 2);
        let (e1, e2) = (errors[0], errors[1]);

        if e1 == 0 && e2 >= 0 || e2 == 0 && e1 > 0 {
            return Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: 1,
            };
        }
        if e1 == 0 && e2 < 0 || e2 == 0 && e1 < 0 {
            return Disposition::Embed {
                bit0_delta: 0,
                bit1_delta: -1,
            };
        }
        if e1 == -1 && e2 < 0 || e2 == -1 && e1 < -1 {
            return Disposition::Embed {
                bit0_delta: -1,
                bit1_delta: -2,
            };
        }
        if e1 == 1 && e2 > 0 || e2 == 1 && e1 > 1 {
            return Disposition::Embed {
                bit0_delta: 1,
                bit1_delta: 2,
            };
        }
        // Both carrier bins on each side are consumed above; shifts move by 2.
        if e1 > 1 && e2 > 1 {
            return Disposition::Shift(2);
        }
        if e1 < -1 && e2 < -1 {
            return Disposition::Shift(-2);
        }
        Disposition::Skip
    }

    fn classify_extract(&self, errors: &[i32]) -> Result<(Option<u8>, i32)> {
        debug_assert_eq!(errors.len(), 2);
        let (e1, e2) = (errors[0], errors[1]);

        if e1 == 0 || e2 == 0 {
            return Ok((Some(0), 0));
        }
        // Zero bin, bit 1.
        if e1 == 1 && e2 >= 1 || e2 == 1 && e1 >= 2 {
            return Ok((Some(1), -1));
        }
        if e1 == -1 && e2 <= -2 || e2 == -1 && e1 <= -2 {
            return Ok((Some(1), 1));
        }
        // +1 bin.
        if e1 == 2 && e2 >= 2 || e2 == 2 && e1 >= 3 {
            return Ok((Some(0), -1));
        }
        if e1 == 3 && e2 >= 3 || e2 == 3 && e1 >= 4 {
            return Ok((Some(1), -2));
        }
        // -1 bin.
        if e1 == -2 && e2 <= -2 || e2 == -2 && e1 <= -3 {
            return Ok((Some(0), 1));
        }
        if e1 == -3 && e2 <= -3 || e2 == -3 && e1 <= -4 {
            return Ok((Some(1), 2));
        }
        // Shifts.
        if e1 >= 4 && e2 >= 4 {
            return Ok((None, -2));
        }
        if e1 <= -4 && e2 <= -4 {
            return Ok((None, 2));
        }
        if (e1 > 0) != (e2 > 0) {
            return Ok((None, 0));
        }
        Err(inconsistent(errors))
    }

    fn guard_values(&self) -> &'static [u8] {
        guard_set(self.algorithm.variant())
    }

    fn max_pixel_delta(&self) -> u8 {
        2
    }
}
