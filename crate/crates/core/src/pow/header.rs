//! The 80-byte proof-of-work block header.
//!
//! Field order and widths follow the Bitcoin-style layout shared by the
//! Lyra2RE-family networks; every multi-byte field serializes little-endian,
//! and the two embedded hashes are carried in wire order (no display
//! reversal happens here).

use crate::chain::HEADER_BYTES;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockHeader {
    pub version: u32,
    pub prev_block_hash: [u8; 32],
    pub merkle_root: [u8; 32],
    pub time: u32,
    pub nbits: u32,
    pub nonce: u32,
}

impl BlockHeader {
    /// Serializes to the 80-byte wire format.
    pub fn encode(&self) -> [u8; HEADER_BYTES] {
        let mut out = [0u8; HEADER_BYTES];
        out[0..4].copy_from_slice(&self.version.to_le_bytes());
        out[4..36].copy_from_slice(&self.prev_block_hash);
        out[36..68].copy_from_slice(&self.merkle_root);
        out[68..72].copy_from_slice(&self.time.to_le_bytes());
        out[72..76].copy_from_slice(&self.nbits.to_le_bytes());
        out[76..80].copy_from_slice(&self.nonce.to_le_bytes());
        out
    }

    /// Parses the 80-byte wire format; total over all inputs.
    pub fn decode(bytes: &[u8; HEADER_BYTES]) -> Self {
        BlockHeader {
            version: u32::from_le_bytes(bytes[0..4].try_into().unwrap()),
            prev_block_hash: bytes[4..36].try_into().unwrap(),
            merkle_root: bytes[36..68].try_into().unwrap(),
            time: u32::from_le_bytes(bytes[68..72].try_into().unwrap()),
            nbits: u32::from_le_bytes(bytes[72..76].try_into().unwrap()),
            nonce: u32::from_le_bytes(bytes[76..80].try_into().unwrap()),
        }
    }

    pub fn with_nonce(mut self, nonce: u32) -> Self {
        self.nonce = nonce;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_header_is_zero_bytes() {
        let h = BlockHeader {
            version: 0,
            prev_block_hash: [0; 32],
            merkle_root: [0; 32],
            time: 0,
            nbits: 0,
            nonce: 0,
        };
        assert_eq!(h.encode(), [0u8; 80]);
    }

    #[test]
    fn bitcoin_genesis_layout() {
        // The Bitcoin genesis header, byte-for-byte as on the live network;
        // the Lyra2RE-family coins reuse the same layout.
        let merkle: [u8; 32] =
            hex::decode("3ba3edfd7a7b12b27ac72c3e67768f617fc81bc3888a51323a9fb8aa4b1e5e4a")
                .unwrap()
                .try_into()
                .unwrap();
        let h = BlockHeader {
            version: 1,
            prev_block_hash: [0; 32],
            merkle_root: merkle,
            time: 1231006505,
            nbits: 0x1d00ffff,
            nonce: 2083236893,
        };
        let expected = hex::decode(concat!(
            "01000000",
            "0000000000000000000000000000000000000000000000000000000000000000",
            "3ba3edfd7a7b12b27ac72c3e67768f617fc81bc3888a51323a9fb8aa4b1e5e4a",
            "29ab5f49",
            "ffff001d",
            "1dac2b7c",
        ))
        .unwrap();
        assert_eq!(h.encode()[..], expected[..]);
        assert_eq!(BlockHeader::decode(&h.encode()), h);
    }

    #[test]
    fn round_trip_random_headers() {
        let mut seed = 0x243f6a8885a308d3u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..1000 {
            let mut h = BlockHeader {
                version: next() as u32,
                prev_block_hash: [0; 32],
                merkle_root: [0; 32],
                time: next() as u32,
                nbits: next() as u32,
                nonce: next() as u32,
            };
            for b in h.prev_block_hash.iter_mut() {
                *b = next() as u8;
            }
            for b in h.merkle_root.iter_mut() {
                *b = next() as u8;
            }
            assert_eq!(BlockHeader::decode(&h.encode()), h);
        }
    }
}
