//! Thread-local round/compression counters.
//!
//! Every permutation executed by the hash cores is tallied here so tests can
//! assert the per-hash execution structure (e.g. 68 sponge rounds per Lyra2
//! hash, 24 Keccak rounds, 192 CubeHash rounds). Counters are per-thread;
//! snapshot-diff around the code under test.

use std::cell::Cell;
use std::ops::Sub;

/// Cumulative work counters for the current thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RoundCounts {
    /// BLAKE2b rounds executed inside the Lyra2 duplex sponge.
    pub sponge_rounds: u64,
    /// BLAKE-256 rounds (14 per compression).
    pub blake256_rounds: u64,
    /// Keccak-f\[1600\] rounds (24 per permutation).
    pub keccak_rounds: u64,
    /// CubeHash rounds (192 per 32-byte hash).
    pub cubehash_rounds: u64,
    /// Threefish-512 rounds (72 per UBI block).
    pub threefish_rounds: u64,
    /// BMW-256 compression invocations (2 per hash).
    pub bmw_compressions: u64,
}

impl Sub for RoundCounts {
    type Output = RoundCounts;

    fn sub(self, rhs: RoundCounts) -> RoundCounts {
        RoundCounts {
            sponge_rounds: self.sponge_rounds - rhs.sponge_rounds,
            blake256_rounds: self.blake256_rounds - rhs.blake256_rounds,
            keccak_rounds: self.keccak_rounds - rhs.keccak_rounds,
            cubehash_rounds: self.cubehash_rounds - rhs.cubehash_rounds,
            threefish_rounds: self.threefish_rounds - rhs.threefish_rounds,
            bmw_compressions: self.bmw_compressions - rhs.bmw_compressions,
        }
    }
}

thread_local! {
    static COUNTS: Cell<RoundCounts> = const { Cell::new(RoundCounts {
        sponge_rounds: 0,
        blake256_rounds: 0,
        keccak_rounds: 0,
        cubehash_rounds: 0,
        threefish_rounds: 0,
        bmw_compressions: 0,
    }) };
}

/// Returns the counters accumulated on this thread so far.
pub fn snapshot() -> RoundCounts {
    COUNTS.with(|c| c.get())
}

/// Resets this thread's counters to zero.
pub fn reset() {
    COUNTS.with(|c| c.set(RoundCounts::default()));
}

macro_rules! bump {
    ($name:ident, $field:ident) => {
        #[inline]
        pub(crate) fn $name(n: u64) {
            COUNTS.with(|c| {
                let mut v = c.get();
                v.$field += n;
                c.set(v);
            });
        }
    };
}

bump!(add_sponge_rounds, sponge_rounds);
bump!(add_blake256_rounds, blake256_rounds);
bump!(add_keccak_rounds, keccak_rounds);
bump!(add_cubehash_rounds, cubehash_rounds);
bump!(add_threefish_rounds, threefish_rounds);
bump!(add_bmw_compressions, bmw_compressions);
