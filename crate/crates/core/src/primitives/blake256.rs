//! BLAKE-256 with 14 rounds, as used at the head of the chain.
//!
//! The chain feeds it 640-bit block headers, which split into two
//! compression blocks (the second carrying the padding and total length).

use super::Digest256;
use crate::counters;

const ROUNDS: usize = 14;

const IV: [u32; 8] = [
    0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a, 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19,
];

const C: [u32; 16] = [
    0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344, 0xa4093822, 0x299f31d0, 0x082efa98, 0xec4e6c89,
    0x452821e6, 0x38d01377, 0xbe5466cf, 0x34e90c6c, 0xc0ac29b7, 0xc97c50dd, 0x3f84d5b5, 0xb5470917,
];

const SIGMA: [[usize; 16]; 10] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
    [14, 10, 4, 8, 9, 15, 13, 6, 1, 12, 0, 2, 11, 7, 5, 3],
    [11, 8, 12, 0, 5, 2, 15, 13, 10, 14, 3, 6, 7, 1, 9, 4],
    [7, 9, 3, 1, 13, 12, 11, 14, 2, 6, 5, 10, 4, 0, 15, 8],
    [9, 0, 5, 7, 2, 4, 10, 15, 14, 1, 11, 12, 6, 8, 3, 13],
    [2, 12, 6, 10, 0, 11, 8, 3, 4, 13, 7, 5, 15, 14, 1, 9],
    [12, 5, 1, 15, 14, 13, 4, 10, 0, 7, 6, 3, 9, 2, 8, 11],
    [13, 11, 7, 14, 12, 1, 3, 9, 5, 0, 15, 4, 8, 6, 2, 10],
    [6, 15, 14, 9, 11, 3, 0, 8, 12, 2, 13, 7, 1, 4, 10, 5],
    [10, 2, 8, 4, 7, 6, 1, 5, 15, 11, 9, 14, 3, 12, 13, 0],
];

#[inline]
#[allow(clippy::too_many_arguments)]
fn g(
    v: &mut [u32; 16],
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    m: &[u32; 16],
    s: &[usize; 16],
    i: usize,
) {
    let (x, y) = (s[2 * i], s[2 * i + 1]);
    v[a] = v[a].wrapping_add(v[b]).wrapping_add(m[x] ^ C[y]);
    v[d] = (v[d] ^ v[a]).rotate_right(16);
    v[c] = v[c].wrapping_add(v[d]);
    v[b] = (v[b] ^ v[c]).rotate_right(12);
    v[a] = v[a].wrapping_add(v[b]).wrapping_add(m[y] ^ C[x]);
    v[d] = (v[d] ^ v[a]).rotate_right(8);
    v[c] = v[c].wrapping_add(v[d]);
    v[b] = (v[b] ^ v[c]).rotate_right(7);
}

/// `t` is the number of message bits hashed up to and including this block
/// (zero for a block of pure padding).
fn compress(h: &mut [u32; 8], block: &[u8; 64], t: u64) {
    let mut m = [0u32; 16];
    for (w, chunk) in m.iter_mut().zip(block.chunks_exact(4)) {
        *w = u32::from_be_bytes(chunk.try_into().unwrap());
    }
    let mut v = [0u32; 16];
    v[..8].copy_from_slice(h);
    v[8] = C[0];
    v[9] = C[1];
    v[10] = C[2];
    v[11] = C[3];
    v[12] = C[4] ^ (t as u32);
    v[13] = C[5] ^ (t as u32);
    v[14] = C[6] ^ ((t >> 32) as u32);
    v[15] = C[7] ^ ((t >> 32) as u32);

    for r in 0..ROUNDS {
        let s = &SIGMA[r % 10];
        g(&mut v, 0, 4, 8, 12, &m, s, 0);
        g(&mut v, 1, 5, 9, 13, &m, s, 1);
        g(&mut v, 2, 6, 10, 14, &m, s, 2);
        g(&mut v, 3, 7, 11, 15, &m, s, 3);
        g(&mut v, 0, 5, 10, 15, &m, s, 4);
        g(&mut v, 1, 6, 11, 12, &m, s, 5);
        g(&mut v, 2, 7, 8, 13, &m, s, 6);
        g(&mut v, 3, 4, 9, 14, &m, s, 7);
    }
    for i in 0..8 {
        h[i] ^= v[i] ^ v[i + 8];
    }
    counters::add_blake256_rounds(ROUNDS as u64);
}

/// BLAKE-256 of an arbitrary-length message.
pub fn blake256(data: &[u8]) -> Digest256 {
    let mut h = IV;
    let bit_len = (data.len() as u64) * 8;

    let mut chunks = data.chunks_exact(64);
    let mut processed = 0u64;
    for block in &mut chunks {
        processed += 512;
        compress(&mut h, block.try_into().unwrap(), processed);
    }
    let rem = chunks.remainder();

    let mut buf = [0u8; 64];
    buf[..rem.len()].copy_from_slice(rem);
    if rem.len() <= 55 {
        buf[rem.len()] = 0x80;
        buf[55] |= 0x01;
        buf[56..].copy_from_slice(&bit_len.to_be_bytes());
        // A block of pure padding carries a zero counter.
        let t = if rem.is_empty() { 0 } else { bit_len };
        compress(&mut h, &buf, t);
    } else {
        buf[rem.len()] = 0x80;
        compress(&mut h, &buf, bit_len);
        let mut tail = [0u8; 64];
        tail[55] = 0x01;
        tail[56..].copy_from_slice(&bit_len.to_be_bytes());
        compress(&mut h, &tail, 0);
    }

    let mut out = [0u8; 32];
    for (chunk, w) in out.chunks_exact_mut(4).zip(&h) {
        chunk.copy_from_slice(&w.to_be_bytes());
    }
    out
}

/// BLAKE-256 of an 80-byte block header (two compression blocks).
pub fn blake256_header(header: &[u8; 80]) -> Digest256 {
    blake256(header)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex32(s: &str) -> [u8; 32] {
        hex::decode(s).unwrap().try_into().unwrap()
    }

    #[test]
    fn known_answer_single_zero_byte() {
        // KAT from the BLAKE SHA-3 submission.
        assert_eq!(
            blake256(&[0u8]),
            hex32("0ce8d4ef4dd7cd8d62dfded9d4edb0a774ae6a41929a74da23109e8f11139c87")
        );
    }

    #[test]
    fn known_answer_72_zero_bytes() {
        // Second submission KAT; exercises the two-block path.
        assert_eq!(
            blake256(&[0u8; 72]),
            hex32("d419bad32d504fb7d44d460c42c5593fe544fa4c135dec31e21bd9abdcc22d41")
        );
    }

    #[test]
    fn zero_header_matches_reference_chain_stage() {
        // First-stage output of the chain reference for an all-zero header.
        assert_eq!(
            blake256_header(&[0u8; 80]),
            hex32("0c7b159452328517463db487df5e39b71322afaf14ed562ce9d18d7d9051b305")
        );
    }

    #[test]
    fn two_blocks_times_14_rounds() {
        crate::counters::reset();
        let _ = blake256_header(&[0u8; 80]);
        assert_eq!(crate::counters::snapshot().blake256_rounds, 2 * 14);
    }

    #[test]
    fn avalanche_on_single_bit_flips() {
        let base = blake256_header(&[0u8; 80]);
        let mut seed = 0x6a09e667f3bcc908u64;
        for _ in 0..64 {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let bit = (seed % 640) as usize;
            let mut header = [0u8; 80];
            header[bit / 8] ^= 1 << (bit % 8);
            assert_ne!(blake256_header(&header), base, "bit {bit}");
        }
    }
}
