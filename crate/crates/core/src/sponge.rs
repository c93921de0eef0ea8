//! The duplex sponge underlying Lyra2.
//!
//! The state is 16 × 64-bit words (1024 bits) permuted by the BLAKE2b round
//! function without message injection. The duplex interface exposes a
//! 768-bit rate (12 words); the bootstrap absorb deliberately touches only
//! 512 bits so the BLAKE2b initialization value in the upper state words is
//! not overwritten before the first permutation.
//!
//! Sequencing follows the duplex convention used by Lyra2: `squeeze` reads
//! the rate *before* permuting, `duplex` injects its input and reads the
//! rate *after* permuting. Lyra2MOD additionally reads the raw state with
//! zero rounds ([`DuplexSponge::squeeze_raw`]).

use crate::counters;

/// State width in 64-bit words.
pub const STATE_WORDS: usize = 16;
/// Duplex rate in 64-bit words (768 bits).
pub const RATE_WORDS: usize = 12;
/// Duplex rate in bytes.
pub const RATE_BYTES: usize = RATE_WORDS * 8;
/// Bootstrap absorb width in 64-bit words (512 bits).
pub const BOOTSTRAP_WORDS: usize = 8;
/// Rounds of a full-round absorb.
pub const FULL_ROUNDS: u32 = 12;
/// Rounds of a reduced-round duplex/squeeze.
pub const REDUCED_ROUNDS: u32 = 1;

/// One 768-bit rate-sized block, as stored in the Lyra2 memory matrix.
pub type RateBlock = [u64; RATE_WORDS];

/// The all-zero rate block (an empty duplex input).
pub const ZERO_BLOCK: RateBlock = [0; RATE_WORDS];

const BLAKE2B_IV: [u64; 8] = [
    0x6a09e667f3bcc908,
    0xbb67ae8584caa73b,
    0x3c6ef372fe94f82b,
    0xa54ff53a5f1d36f1,
    0x510e527fade682d1,
    0x9b05688c2b3e6c1f,
    0x1f83d9abfb41bd6b,
    0x5be0cd19137e2179,
];

/// The G-function of BLAKE2b as used inside the sponge permutation: no
/// message injection, rotation constants 32/24/16/63, additions mod 2^64.
#[inline]
pub fn g_function(a: u64, b: u64, c: u64, d: u64) -> (u64, u64, u64, u64) {
    let a = a.wrapping_add(b);
    let d = (d ^ a).rotate_right(32);
    let c = c.wrapping_add(d);
    let b = (b ^ c).rotate_right(24);
    let a = a.wrapping_add(b);
    let d = (d ^ a).rotate_right(16);
    let c = c.wrapping_add(d);
    let b = (b ^ c).rotate_right(63);
    (a, b, c, d)
}

#[inline]
fn g(v: &mut [u64; STATE_WORDS], a: usize, b: usize, c: usize, d: usize) {
    let (na, nb, nc, nd) = g_function(v[a], v[b], v[c], v[d]);
    v[a] = na;
    v[b] = nb;
    v[c] = nc;
    v[d] = nd;
}

/// A 1024-bit duplex sponge state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DuplexSponge {
    v: [u64; STATE_WORDS],
}

impl Default for DuplexSponge {
    fn default() -> Self {
        Self::new()
    }
}

impl DuplexSponge {
    /// A freshly initialized sponge: words 0–7 zero, words 8–15 the BLAKE2b
    /// IV. The IV avoids the permutation's all-zero fixed point.
    pub fn new() -> Self {
        let mut v = [0u64; STATE_WORDS];
        v[BOOTSTRAP_WORDS..].copy_from_slice(&BLAKE2B_IV);
        DuplexSponge { v }
    }

    /// Borrow the raw state words.
    pub fn words(&self) -> &[u64; STATE_WORDS] {
        &self.v
    }

    /// One BLAKE2b round: a column layer of four G-blocks followed by a
    /// diagonal layer of four G-blocks.
    pub fn round_f(&mut self) {
        let v = &mut self.v;
        g(v, 0, 4, 8, 12);
        g(v, 1, 5, 9, 13);
        g(v, 2, 6, 10, 14);
        g(v, 3, 7, 11, 15);
        g(v, 0, 5, 10, 15);
        g(v, 1, 6, 11, 12);
        g(v, 2, 7, 8, 13);
        g(v, 3, 4, 9, 14);
        counters::add_sponge_rounds(1);
    }

    fn permute_full(&mut self) {
        for _ in 0..FULL_ROUNDS {
            self.round_f();
        }
    }

    /// Full-round absorb of a 512-bit block into the lower eight words.
    /// Used only during bootstrap, so the IV half of the state enters the
    /// first permutation unmodified.
    pub fn absorb_bootstrap_block(&mut self, block: &[u64; BOOTSTRAP_WORDS]) {
        for (w, b) in self.v.iter_mut().zip(block) {
            *w ^= b;
        }
        self.permute_full();
    }

    /// Full-round absorb of a rate-sized (768-bit) block; the wrap-up
    /// absorb of Lyra2.
    pub fn absorb_rate_block(&mut self, block: &RateBlock) {
        for (w, b) in self.v.iter_mut().zip(block) {
            *w ^= b;
        }
        self.permute_full();
    }

    /// Reduced-round squeeze: returns the current rate, then applies one
    /// round (the trailing empty absorb of the duplex squeeze).
    pub fn reduced_squeeze(&mut self) -> RateBlock {
        let out = self.rate();
        self.round_f();
        out
    }

    /// Reduced-round duplex: XORs `input` into the rate, applies one round
    /// and returns the new rate.
    pub fn reduced_duplex(&mut self, input: &RateBlock) -> RateBlock {
        for (w, b) in self.v.iter_mut().zip(input) {
            *w ^= b;
        }
        self.round_f();
        self.rate()
    }

    /// Reads the full 1024-bit state without performing any rounds. This is
    /// the zero-round squeeze Lyra2MOD uses for row selection; unlike the
    /// regular duplex output it exposes the capacity words too.
    pub fn squeeze_raw(&self) -> [u64; STATE_WORDS] {
        self.v
    }

    /// Copies the first `out.len()` bytes of the rate (little-endian words)
    /// without permuting; valid for reads up to the full rate.
    pub fn read_rate_bytes(&self, out: &mut [u8]) {
        assert!(out.len() <= RATE_BYTES, "read exceeds the sponge rate");
        for (i, chunk) in out.chunks_mut(8).enumerate() {
            let bytes = self.v[i].to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }

    fn rate(&self) -> RateBlock {
        let mut out = [0u64; RATE_WORDS];
        out.copy_from_slice(&self.v[..RATE_WORDS]);
        out
    }

    #[cfg(test)]
    pub(crate) fn test_with_words(v: [u64; STATE_WORDS]) -> Self {
        DuplexSponge { v }
    }

    /// Debug dump: 16 lowercase hex words, most-significant word last, one
    /// per line.
    pub fn dump(&self) -> String {
        let mut s = String::with_capacity(STATE_WORDS * 17);
        for w in &self.v {
            s.push_str(&format!("{w:016x}\n"));
        }
        s
    }
}
