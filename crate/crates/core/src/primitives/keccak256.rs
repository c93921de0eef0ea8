//! Keccak-256 (the original pre-standard padding), an instance of
//! Keccak-f\[1600\] with rate 1088 and capacity 512, 24 rounds.

use super::Digest256;
use crate::counters;

const RATE_BYTES: usize = 136;
const ROUNDS: usize = 24;

const RC: [u64; ROUNDS] = [
    0x0000000000000001,
    0x0000000000008082,
    0x800000000000808a,
    0x8000000080008000,
    0x000000000000808b,
    0x0000000080000001,
    0x8000000080008081,
    0x8000000000008009,
    0x000000000000008a,
    0x0000000000000088,
    0x0000000080008009,
    0x000000008000000a,
    0x000000008000808b,
    0x800000000000008b,
    0x8000000000008089,
    0x8000000000008003,
    0x8000000000008002,
    0x8000000000000080,
    0x000000000000800a,
    0x800000008000000a,
    0x8000000080008081,
    0x8000000000008080,
    0x0000000080000001,
    0x8000000080008008,
];

// Rotation offsets indexed by lane (x + 5y).
const RHO: [u32; 25] = [
    0, 1, 62, 28, 27, 36, 44, 6, 55, 20, 3, 10, 43, 25, 39, 41, 45, 15, 21, 8, 18, 2, 61, 56, 14,
];

fn keccak_f(a: &mut [u64; 25]) {
    for rc in RC {
        // theta
        let mut c = [0u64; 5];
        for x in 0..5 {
            c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
        }
        for x in 0..5 {
            let d = c[(x + 4) % 5] ^ c[(x + 1) % 5].rotate_left(1);
            for y in 0..5 {
                a[x + 5 * y] ^= d;
            }
        }
        // rho + pi
        let mut b = [0u64; 25];
        for x in 0..5 {
            for y in 0..5 {
                let nx = y;
                let ny = (2 * x + 3 * y) % 5;
                b[nx + 5 * ny] = a[x + 5 * y].rotate_left(RHO[x + 5 * y]);
            }
        }
        // chi
        for y in 0..5 {
            for x in 0..5 {
                a[x + 5 * y] = b[x + 5 * y] ^ (!b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
            }
        }
        // iota
        a[0] ^= rc;
    }
    counters::add_keccak_rounds(ROUNDS as u64);
}

fn absorb_block(a: &mut [u64; 25], block: &[u8]) {
    for (i, chunk) in block.chunks_exact(8).enumerate() {
        a[i] ^= u64::from_le_bytes(chunk.try_into().unwrap());
    }
    keccak_f(a);
}

fn keccak256_bytes(data: &[u8]) -> Digest256 {
    let mut a = [0u64; 25];
    let mut chunks = data.chunks_exact(RATE_BYTES);
    for block in &mut chunks {
        absorb_block(&mut a, block);
    }
    let rem = chunks.remainder();
    let mut last = [0u8; RATE_BYTES];
    last[..rem.len()].copy_from_slice(rem);
    last[rem.len()] ^= 0x01;
    last[RATE_BYTES - 1] ^= 0x80;
    absorb_block(&mut a, &last);

    let mut out = [0u8; 32];
    for (chunk, lane) in out.chunks_exact_mut(8).zip(a.iter()) {
        chunk.copy_from_slice(&lane.to_le_bytes());
    }
    out
}

/// Keccak-256 of a 256-bit chain value.
pub fn keccak256(input: &Digest256) -> Digest256 {
    keccak256_bytes(input)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hex32(s: &str) -> [u8; 32] {
        hex::decode(s).unwrap().try_into().unwrap()
    }

    #[test]
    fn known_answer_empty() {
        assert_eq!(
            keccak256_bytes(b""),
            hex32("c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470")
        );
    }

    #[test]
    fn known_answer_abc() {
        assert_eq!(
            keccak256_bytes(b"abc"),
            hex32("4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45")
        );
    }

    #[test]
    fn known_answer_32_zero_bytes() {
        assert_eq!(
            keccak256(&[0u8; 32]),
            hex32("290decd9548b62a8d60345a988386fc84ba6bc95484008f6362f93160ef3e563")
        );
    }

    #[test]
    fn permutation_runs_24_rounds_per_hash() {
        crate::counters::reset();
        let _ = keccak256(&[7u8; 32]);
        assert_eq!(crate::counters::snapshot().keccak_rounds, 24);
    }
}
