//! Composition of the hash cores into the two chained algorithms.
//!
//! Lyra2REv2: BLAKE → Keccak → CubeHash → Lyra2 → Skein → CubeHash → BMW.
//! Lyra2REv3: BLAKE → Lyra2MOD → CubeHash → Lyra2MOD → BMW.
//!
//! Stages after the header hash are plain `[u8; 32] → [u8; 32]` functions,
//! so the two chains differ only in wiring.

use crate::lyra2::{lyra2_hash_256, Lyra2Variant};
use crate::primitives::{blake256_header, bmw256, cubehash256, keccak256, skein256, Digest256};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Serialized block-header width consumed by the chain head.
pub const HEADER_BYTES: usize = 80;

/// Which chained hashing algorithm to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainVariant {
    Rev2,
    Rev3,
}

impl ChainVariant {
    /// Number of stages including the header hash.
    pub fn stage_count(self) -> usize {
        match self {
            ChainVariant::Rev2 => 7,
            ChainVariant::Rev3 => 5,
        }
    }
}

impl fmt::Display for ChainVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainVariant::Rev2 => "rev2",
            ChainVariant::Rev3 => "rev3",
        })
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown chain variant {0:?} (expected rev2 or rev3)")]
pub struct ParseVariantError(String);

impl FromStr for ChainVariant {
    type Err = ParseVariantError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rev2" | "lyra2rev2" => Ok(ChainVariant::Rev2),
            "rev3" | "lyra2rev3" => Ok(ChainVariant::Rev3),
            other => Err(ParseVariantError(other.to_string())),
        }
    }
}

type StageFn = fn(&Digest256) -> Digest256;

fn lyra2_rev2_stage(input: &Digest256) -> Digest256 {
    lyra2_hash_256(input, Lyra2Variant::Rev2)
}

fn lyra2_mod_stage(input: &Digest256) -> Digest256 {
    lyra2_hash_256(input, Lyra2Variant::Mod)
}

const REV2_TAIL: &[(&str, StageFn)] = &[
    ("keccak256", keccak256),
    ("cubehash256", cubehash256),
    ("lyra2", lyra2_rev2_stage),
    ("skein256", skein256),
    ("cubehash256", cubehash256),
    ("bmw256", bmw256),
];

const REV3_TAIL: &[(&str, StageFn)] = &[
    ("lyra2mod", lyra2_mod_stage),
    ("cubehash256", cubehash256),
    ("lyra2mod", lyra2_mod_stage),
    ("bmw256", bmw256),
];

fn tail(variant: ChainVariant) -> &'static [(&'static str, StageFn)] {
    match variant {
        ChainVariant::Rev2 => REV2_TAIL,
        ChainVariant::Rev3 => REV3_TAIL,
    }
}

/// Stage names in execution order, header hash first.
pub fn stage_names(variant: ChainVariant) -> Vec<&'static str> {
    let mut names = vec!["blake256"];
    names.extend(tail(variant).iter().map(|(n, _)| *n));
    names
}

/// The chained digest of an 80-byte block header.
pub fn chain_hash(header: &[u8; HEADER_BYTES], variant: ChainVariant) -> Digest256 {
    tail(variant)
        .iter()
        .fold(blake256_header(header), |value, (_, stage)| stage(&value))
}

/// The digest after every stage, in order; the last element equals
/// [`chain_hash`].
pub fn stage_outputs(header: &[u8; HEADER_BYTES], variant: ChainVariant) -> Vec<Digest256> {
    let mut outputs = Vec::with_capacity(variant.stage_count());
    outputs.push(blake256_header(header));
    for (_, stage) in tail(variant) {
        let next = stage(outputs.last().unwrap());
        outputs.push(next);
    }
    outputs
}
