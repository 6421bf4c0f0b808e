//! Packed payload bits, MSB-first within each byte.

use crate::error::{Error, Result};
use rand::RngCore;

/// A payload of `bit_len` bits packed MSB-first, with the final byte
/// zero-padded. `bytes.len()` is always `ceil(bit_len / 8)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    bit_len: usize,
    bytes: Vec<u8>,
}

impl BitStream {
    /// Packs a sequence of 0/1 values.
    pub fn from_bits(bits: &[u8]) -> BitStream {
        let mut bytes = vec![0u8; bits.len().div_ceil(8)];
        for (n, &bit) in bits.iter().enumerate() {
            debug_assert!(bit <= 1);
            if bit != 0 {
                bytes[n / 8] |= 0x80 >> (n % 8);
            }
        }
        BitStream {
            bit_len: bits.len(),
            bytes,
        }
    }

    /// Interprets packed bytes as a stream of `bit_len` bits. The byte count
    /// must match exactly and the padding bits in the final byte must be
    /// zero.
    pub fn from_bytes(bytes: Vec<u8>, bit_len: usize) -> Result<BitStream> {
        let expected = bit_len.div_ceil(8);
        if bytes.len() != expected {
            return Err(Error::BitStream(format!(
                "stream of {bit_len} bits needs {expected} bytes, got {}",
                bytes.len()
            )));
        }
        if !bit_len.is_multiple_of(8) {
            let mask = 0xffu8 >> (bit_len % 8);
            if bytes[bytes.len() - 1] & mask != 0 {
                return Err(Error::PaddingNonZero);
            }
        }
        Ok(BitStream { bit_len, bytes })
    }

    /// A seeded random payload of exactly `bit_len` bits.
    pub fn random(rng: &mut impl RngCore, bit_len: usize) -> BitStream {
        let mut bytes = vec![0u8; bit_len.div_ceil(8)];
        rng.fill_bytes(&mut bytes);
        if !bit_len.is_multiple_of(8) {
            let last = bytes.len() - 1;
            bytes[last] &= !(0xffu8 >> (bit_len % 8));
        }
        BitStream { bit_len, bytes }
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn is_empty(&self) -> bool {
        self.bit_len == 0
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// The `n`-th bit, 0-based from the front of the stream.
    pub fn bit(&self, n: usize) -> u8 {
        debug_assert!(n < self.bit_len);
        (self.bytes[n / 8] >> (7 - n % 8)) & 1
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.bit_len).map(|n| self.bit(n))
    }

    /// Unpacks into one value per bit.
    pub fn to_bit_vec(&self) -> Vec<u8> {
        self.iter_bits().collect()
    }
}
