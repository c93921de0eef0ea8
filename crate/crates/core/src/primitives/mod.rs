//! The auxiliary hash cores of the chain, specialised to its fixed widths:
//! BLAKE-256 over the 80-byte header, then Keccak-256, CubeHash-256,
//! Skein-256 and BMW-256 over 32-byte values.
//!
//! Parameterizations (padding, IVs, truncation) are pinned to the chain's
//! reference software rather than the original SHA-3 submission interfaces;
//! stage boundaries pass raw 32-byte values with no byte swapping between
//! cores.

mod blake256;
mod bmw256;
mod cubehash256;
mod keccak256;
mod skein256;

pub use blake256::{blake256, blake256_header};
pub use bmw256::bmw256;
pub use cubehash256::cubehash256;
pub use keccak256::keccak256;
pub use skein256::skein256;

/// A 256-bit value at a chain stage boundary.
pub type Digest256 = [u8; 32];
