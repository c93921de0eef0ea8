//! Compact (nBits) target encoding and threshold comparison.
//!
//! Hash digests compare as 256-bit little-endian integers, the protocol
//! convention for this header family. The display form of [`U256`] is
//! big-endian hex, so printed targets read naturally.

use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// A 256-bit unsigned integer; little-endian 64-bit limbs.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct U256([u64; 4]);

impl U256 {
    pub const ZERO: U256 = U256([0; 4]);
    pub const MAX: U256 = U256([u64::MAX; 4]);

    /// Interprets 32 bytes as a little-endian integer (the digest
    /// comparison convention).
    pub fn from_le_bytes(bytes: &[u8; 32]) -> Self {
        let mut limbs = [0u64; 4];
        for (limb, chunk) in limbs.iter_mut().zip(bytes.chunks_exact(8)) {
            *limb = u64::from_le_bytes(chunk.try_into().unwrap());
        }
        U256(limbs)
    }

    pub fn to_le_bytes(self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (chunk, limb) in out.chunks_exact_mut(8).zip(self.0) {
            chunk.copy_from_slice(&limb.to_le_bytes());
        }
        out
    }

    pub fn limbs(&self) -> &[u64; 4] {
        &self.0
    }

    fn from_byte_at(value: u8, position: usize) -> Self {
        let mut limbs = [0u64; 4];
        limbs[position / 8] = (value as u64) << (8 * (position % 8));
        U256(limbs)
    }

    fn bitor(self, other: U256) -> U256 {
        U256([
            self.0[0] | other.0[0],
            self.0[1] | other.0[1],
            self.0[2] | other.0[2],
            self.0[3] | other.0[3],
        ])
    }
}

impl Ord for U256 {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..4).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for U256 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U256(0x{self})")
    }
}

impl fmt::Display for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for limb in self.0.iter().rev() {
            write!(f, "{limb:016x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TargetError {
    #[error("compact target 0x{0:08x} has the sign bit set")]
    Negative(u32),
    #[error("compact target 0x{0:08x} overflows 256 bits")]
    Overflow(u32),
}

/// Expands an nBits compact value into the 256-bit threshold:
/// `mantissa · 256^(exponent − 3)` with the exponent in the top byte and
/// the mantissa in the low three bytes. Exponents at or below 3 shift the
/// mantissa right instead. A set sign bit (bit 23) is rejected, as is any
/// expansion whose mantissa bytes would land beyond the 256-bit width.
pub fn expand_target(nbits: u32) -> Result<U256, TargetError> {
    if nbits & 0x0080_0000 != 0 {
        return Err(TargetError::Negative(nbits));
    }
    let exponent = (nbits >> 24) as usize;
    let mantissa = nbits & 0x007f_ffff;
    let mantissa_bytes = [
        ((mantissa >> 16) & 0xff) as u8, // most significant
        ((mantissa >> 8) & 0xff) as u8,
        (mantissa & 0xff) as u8,
    ];

    let mut value = U256::ZERO;
    for (i, &byte) in mantissa_bytes.iter().enumerate() {
        if byte == 0 {
            continue;
        }
        // Byte i of the mantissa sits at byte position exponent - 1 - i.
        let pos = exponent as i64 - 1 - i as i64;
        if pos < 0 {
            continue; // shifted below the least-significant byte
        }
        if pos > 31 {
            return Err(TargetError::Overflow(nbits));
        }
        value = value.bitor(U256::from_byte_at(byte, pos as usize));
    }
    Ok(value)
}

/// True iff the digest, read as a little-endian 256-bit integer, is
/// strictly smaller than the target.
pub fn meets_target(hash: &[u8; 32], target: &U256) -> bool {
    U256::from_le_bytes(hash) < *target
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mantissa_times_one() {
        assert_eq!(expand_target(0x03000001).unwrap(), U256([1, 0, 0, 0]));
    }

    #[test]
    fn classic_difficulty_one() {
        // 0x1d00ffff → 0xffff shifted 26 bytes up.
        let t = expand_target(0x1d00ffff).unwrap();
        assert_eq!(
            t.to_string(),
            "00000000ffff0000000000000000000000000000000000000000000000000000"
        );
    }

    #[test]
    fn sign_bit_rejected() {
        assert_eq!(
            expand_target(0x04800000),
            Err(TargetError::Negative(0x04800000))
        );
        assert_eq!(
            expand_target(0x01803456),
            Err(TargetError::Negative(0x01803456))
        );
    }

    #[test]
    fn overflow_rejected() {
        assert_eq!(
            expand_target(0x23000001),
            Err(TargetError::Overflow(0x23000001))
        );
        assert_eq!(
            expand_target(0x22010000),
            Err(TargetError::Overflow(0x22010000))
        );
        assert_eq!(
            expand_target(0x23000100),
            Err(TargetError::Overflow(0x23000100))
        );
        // Highest nonzero byte landing exactly at position 31 is fine.
        let t = expand_target(0x207fffff).unwrap();
        assert_eq!(
            t.to_string(),
            "7fffff0000000000000000000000000000000000000000000000000000000000"
        );
        // Zero high mantissa bytes shift out harmlessly.
        assert!(expand_target(0x210000ff).is_ok());
    }

    #[test]
    fn small_exponents_shift_right() {
        // exponent 2: mantissa shifted right one byte.
        assert_eq!(expand_target(0x02001234).unwrap(), U256([0x12, 0, 0, 0]));
        // exponent 0: everything shifts out.
        assert_eq!(expand_target(0x00001234).unwrap(), U256::ZERO);
    }

    #[test]
    fn zero_mantissa_is_zero_target() {
        assert_eq!(expand_target(0x1d000000).unwrap(), U256::ZERO);
    }

    #[test]
    fn strict_comparison() {
        let one = U256([1, 0, 0, 0]);
        assert!(meets_target(&[0u8; 32], &one));
        let mut bytes = [0u8; 32];
        bytes[0] = 1;
        assert!(!meets_target(&bytes, &one), "equality does not meet");
        assert!(
            !meets_target(&[0xff; 32], &U256::ZERO),
            "nothing is below zero"
        );
    }

    #[test]
    fn ordering_is_big_endian_over_limbs() {
        let small = U256([u64::MAX, u64::MAX, u64::MAX, 0]);
        let big = U256([0, 0, 0, 1]);
        assert!(small < big);
        assert!(U256::ZERO < U256::MAX);
    }
}
