//! BMW-256 (Blue Midnight Wish, tweaked variant) specialised to 32-byte
//! inputs: one message compression followed by the finalization compression
//! with the constant chaining value.

use super::Digest256;
use crate::counters;

const IV: [u32; 16] = [
    0x40414243, 0x44454647, 0x48494a4b, 0x4c4d4e4f, 0x50515253, 0x54555657, 0x58595a5b, 0x5c5d5e5f,
    0x60616263, 0x64656667, 0x68696a6b, 0x6c6d6e6f, 0x70717273, 0x74757677, 0x78797a7b, 0x7c7d7e7f,
];

const FINAL: [u32; 16] = [
    0xaaaaaaa0, 0xaaaaaaa1, 0xaaaaaaa2, 0xaaaaaaa3, 0xaaaaaaa4, 0xaaaaaaa5, 0xaaaaaaa6, 0xaaaaaaa7,
    0xaaaaaaa8, 0xaaaaaaa9, 0xaaaaaaaa, 0xaaaaaaab, 0xaaaaaaac, 0xaaaaaaad, 0xaaaaaaae, 0xaaaaaaaf,
];

#[inline]
fn s0(x: u32) -> u32 {
    (x >> 1) ^ (x << 3) ^ x.rotate_left(4) ^ x.rotate_left(19)
}
#[inline]
fn s1(x: u32) -> u32 {
    (x >> 1) ^ (x << 2) ^ x.rotate_left(8) ^ x.rotate_left(23)
}
#[inline]
fn s2(x: u32) -> u32 {
    (x >> 2) ^ (x << 1) ^ x.rotate_left(12) ^ x.rotate_left(25)
}
#[inline]
fn s3(x: u32) -> u32 {
    (x >> 2) ^ (x << 2) ^ x.rotate_left(15) ^ x.rotate_left(29)
}
#[inline]
fn s4(x: u32) -> u32 {
    (x >> 1) ^ x
}
#[inline]
fn s5(x: u32) -> u32 {
    (x >> 2) ^ x
}

const R: [u32; 7] = [3, 7, 13, 16, 19, 23, 27];

// First-expansion message contribution: signs over (M[i] ^ H[i]) terms.
const W_TERMS: [[(usize, i32); 5]; 16] = [
    [(5, 1), (7, -1), (10, 1), (13, 1), (14, 1)],
    [(6, 1), (8, -1), (11, 1), (14, 1), (15, -1)],
    [(0, 1), (7, 1), (9, 1), (12, -1), (15, 1)],
    [(0, 1), (1, -1), (8, 1), (10, -1), (13, 1)],
    [(1, 1), (2, 1), (9, 1), (11, -1), (14, -1)],
    [(3, 1), (2, -1), (10, 1), (12, -1), (15, 1)],
    [(4, 1), (0, -1), (3, -1), (11, -1), (13, 1)],
    [(1, 1), (4, -1), (5, -1), (12, -1), (14, -1)],
    [(2, 1), (5, -1), (6, -1), (13, 1), (15, -1)],
    [(0, 1), (3, -1), (6, 1), (7, -1), (14, 1)],
    [(8, 1), (1, -1), (4, -1), (7, -1), (15, 1)],
    [(8, 1), (0, -1), (2, -1), (5, -1), (9, 1)],
    [(1, 1), (3, 1), (6, -1), (9, -1), (10, 1)],
    [(2, 1), (4, 1), (7, 1), (10, 1), (11, 1)],
    [(3, 1), (5, -1), (8, 1), (11, -1), (12, -1)],
    [(12, 1), (4, -1), (6, -1), (9, -1), (13, 1)],
];

fn add_elt(m: &[u32; 16], h: &[u32; 16], j: usize) -> u32 {
    let jm = j - 16;
    let a = m[jm % 16].rotate_left((jm % 16) as u32 + 1);
    let b = m[(jm + 3) % 16].rotate_left(((jm + 3) % 16) as u32 + 1);
    let c = m[(jm + 10) % 16].rotate_left(((jm + 10) % 16) as u32 + 1);
    let k = (j as u32).wrapping_mul(0x05555555);
    a.wrapping_add(b).wrapping_sub(c).wrapping_add(k) ^ h[(jm + 7) % 16]
}

fn compress(m: &[u32; 16], h: &[u32; 16]) -> [u32; 16] {
    let mut q = [0u32; 32];

    for (i, terms) in W_TERMS.iter().enumerate() {
        let mut w = 0u32;
        for &(idx, sign) in terms {
            let t = m[idx] ^ h[idx];
            w = if sign > 0 {
                w.wrapping_add(t)
            } else {
                w.wrapping_sub(t)
            };
        }
        let s = match i % 5 {
            0 => s0(w),
            1 => s1(w),
            2 => s2(w),
            3 => s3(w),
            _ => s4(w),
        };
        q[i] = s.wrapping_add(h[(i + 1) % 16]);
    }

    for j in 16..18 {
        // expand1: alternating s1/s2/s3/s0 over the previous 16 words.
        let mut acc = 0u32;
        for (k, sel) in (1..=16).zip([1, 2, 3, 0].iter().cycle()) {
            let x = q[j + k - 17];
            acc = acc.wrapping_add(match sel {
                1 => s1(x),
                2 => s2(x),
                3 => s3(x),
                _ => s0(x),
            });
        }
        q[j] = acc.wrapping_add(add_elt(m, h, j));
    }
    for j in 18..32 {
        // expand2: rotations on odd offsets, s4/s5 on the last two.
        let mut acc = q[j - 16]
            .wrapping_add(r1to7(q[j - 15], 0))
            .wrapping_add(q[j - 14])
            .wrapping_add(r1to7(q[j - 13], 1))
            .wrapping_add(q[j - 12])
            .wrapping_add(r1to7(q[j - 11], 2))
            .wrapping_add(q[j - 10])
            .wrapping_add(r1to7(q[j - 9], 3))
            .wrapping_add(q[j - 8])
            .wrapping_add(r1to7(q[j - 7], 4))
            .wrapping_add(q[j - 6])
            .wrapping_add(r1to7(q[j - 5], 5))
            .wrapping_add(q[j - 4])
            .wrapping_add(r1to7(q[j - 3], 6));
        acc = acc.wrapping_add(s4(q[j - 2])).wrapping_add(s5(q[j - 1]));
        q[j] = acc.wrapping_add(add_elt(m, h, j));
    }

    let xl = q[16] ^ q[17] ^ q[18] ^ q[19] ^ q[20] ^ q[21] ^ q[22] ^ q[23];
    let xh = xl ^ q[24] ^ q[25] ^ q[26] ^ q[27] ^ q[28] ^ q[29] ^ q[30] ^ q[31];

    let mut out = [0u32; 16];
    out[0] = ((xh << 5) ^ (q[16] >> 5) ^ m[0]).wrapping_add(xl ^ q[24] ^ q[0]);
    out[1] = ((xh >> 7) ^ (q[17] << 8) ^ m[1]).wrapping_add(xl ^ q[25] ^ q[1]);
    out[2] = ((xh >> 5) ^ (q[18] << 5) ^ m[2]).wrapping_add(xl ^ q[26] ^ q[2]);
    out[3] = ((xh >> 1) ^ (q[19] << 5) ^ m[3]).wrapping_add(xl ^ q[27] ^ q[3]);
    out[4] = ((xh >> 3) ^ q[20] ^ m[4]).wrapping_add(xl ^ q[28] ^ q[4]);
    out[5] = ((xh << 6) ^ (q[21] >> 6) ^ m[5]).wrapping_add(xl ^ q[29] ^ q[5]);
    out[6] = ((xh >> 4) ^ (q[22] << 6) ^ m[6]).wrapping_add(xl ^ q[30] ^ q[6]);
    out[7] = ((xh >> 11) ^ (q[23] << 2) ^ m[7]).wrapping_add(xl ^ q[31] ^ q[7]);
    out[8] = out[4]
        .rotate_left(9)
        .wrapping_add(xh ^ q[24] ^ m[8])
        .wrapping_add((xl << 8) ^ q[23] ^ q[8]);
    out[9] = out[5]
        .rotate_left(10)
        .wrapping_add(xh ^ q[25] ^ m[9])
        .wrapping_add((xl >> 6) ^ q[16] ^ q[9]);
    out[10] = out[6]
        .rotate_left(11)
        .wrapping_add(xh ^ q[26] ^ m[10])
        .wrapping_add((xl << 6) ^ q[17] ^ q[10]);
    out[11] = out[7]
        .rotate_left(12)
        .wrapping_add(xh ^ q[27] ^ m[11])
        .wrapping_add((xl << 4) ^ q[18] ^ q[11]);
    out[12] = out[0]
        .rotate_left(13)
        .wrapping_add(xh ^ q[28] ^ m[12])
        .wrapping_add((xl >> 3) ^ q[19] ^ q[12]);
    out[13] = out[1]
        .rotate_left(14)
        .wrapping_add(xh ^ q[29] ^ m[13])
        .wrapping_add((xl >> 4) ^ q[20] ^ q[13]);
    out[14] = out[2]
        .rotate_left(15)
        .wrapping_add(xh ^ q[30] ^ m[14])
        .wrapping_add((xl >> 7) ^ q[21] ^ q[14]);
    out[15] = out[3]
        .rotate_left(16)
        .wrapping_add(xh ^ q[31] ^ m[15])
        .wrapping_add((xl >> 2) ^ q[22] ^ q[15]);

    counters::add_bmw_compressions(1);
    out
}

#[inline]
fn r1to7(x: u32, i: usize) -> u32 {
    x.rotate_left(R[i])
}

/// BMW-256 of a 256-bit chain value.
pub fn bmw256(input: &Digest256) -> Digest256 {
    // Single padded block: message, 0x80, zero fill, 64-bit LE bit length.
    let mut block = [0u8; 64];
    block[..32].copy_from_slice(input);
    block[32] = 0x80;
    block[56..].copy_from_slice(&256u64.to_le_bytes());

    let mut m = [0u32; 16];
    for (w, chunk) in m.iter_mut().zip(block.chunks_exact(4)) {
        *w = u32::from_le_bytes(chunk.try_into().unwrap());
    }
    let h1 = compress(&m, &IV);
    let h2 = compress(&h1, &FINAL);

    let mut out = [0u8; 32];
    for (chunk, w) in out.chunks_exact_mut(4).zip(&h2[8..]) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exactly_two_compressions_per_hash() {
        crate::counters::reset();
        let _ = bmw256(&[0u8; 32]);
        assert_eq!(crate::counters::snapshot().bmw_compressions, 2);
    }

    #[test]
    fn distinct_inputs_distinct_digests() {
        let a = bmw256(&[0u8; 32]);
        let b = bmw256(&[1u8; 32]);
        assert_ne!(a, b);
    }
}
