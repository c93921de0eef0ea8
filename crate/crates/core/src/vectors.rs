//! Known-answer vector corpora: seeded header generation, the tab-separated
//! record format, and verification against the implementation.
//!
//! A record is one line of lowercase hex fields separated by tabs: the
//! 80-byte header first, then either the final digest alone or the digest
//! after every stage in order.

use crate::chain::{chain_hash, stage_outputs, ChainVariant, HEADER_BYTES};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorRecord {
    pub header: [u8; HEADER_BYTES],
    /// Either a single final digest or one digest per stage.
    pub digests: Vec<[u8; 32]>,
}

/// Deterministic pseudorandom headers for corpus generation; the stream is
/// fixed by the seed, so corpora regenerate bit-identically.
pub fn seeded_headers(seed: u64, count: usize) -> Vec<[u8; HEADER_BYTES]> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut h = [0u8; HEADER_BYTES];
            rng.fill_bytes(&mut h);
            h
        })
        .collect()
}

/// Computes records for `count` seeded headers: full per-stage digests when
/// `stages` is set, the final digest otherwise.
pub fn generate(seed: u64, count: usize, variant: ChainVariant, stages: bool) -> Vec<VectorRecord> {
    seeded_headers(seed, count)
        .into_iter()
        .map(|header| {
            let digests = if stages {
                stage_outputs(&header, variant)
            } else {
                vec![chain_hash(&header, variant)]
            };
            VectorRecord { header, digests }
        })
        .collect()
}

impl VectorRecord {
    pub fn to_line(&self) -> String {
        let mut fields = vec![hex::encode(self.header)];
        fields.extend(self.digests.iter().map(hex::encode));
        fields.join("\t")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorParseError {
    #[error("line {0}: expected at least a header and one digest")]
    TooFewFields(usize),
    #[error("line {0}: field {1} is not valid hex")]
    BadHex(usize, usize),
    #[error("line {0}: header must be {HEADER_BYTES} bytes")]
    BadHeaderLen(usize),
    #[error("line {0}: digest fields must be 32 bytes")]
    BadDigestLen(usize),
}

/// Parses a corpus document; `#` lines and blank lines are skipped. Line
/// numbers in errors are 1-based.
pub fn parse(text: &str) -> Result<Vec<VectorRecord>, VectorParseError> {
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 2 {
            return Err(VectorParseError::TooFewFields(lineno));
        }
        let header_bytes =
            hex::decode(fields[0]).map_err(|_| VectorParseError::BadHex(lineno, 0))?;
        let header: [u8; HEADER_BYTES] = header_bytes
            .try_into()
            .map_err(|_| VectorParseError::BadHeaderLen(lineno))?;
        let mut digests = Vec::with_capacity(fields.len() - 1);
        for (fidx, field) in fields[1..].iter().enumerate() {
            let bytes =
                hex::decode(field).map_err(|_| VectorParseError::BadHex(lineno, fidx + 1))?;
            let digest: [u8; 32] = bytes
                .try_into()
                .map_err(|_| VectorParseError::BadDigestLen(lineno))?;
            digests.push(digest);
        }
        records.push(VectorRecord { header, digests });
    }
    Ok(records)
}

/// A corpus record that disagreed with the implementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    /// Zero-based record index.
    pub record: usize,
    /// Name of the first diverging stage.
    pub stage: &'static str,
    pub expected: [u8; 32],
    pub actual: [u8; 32],
}

/// Recomputes every record and reports the first diverging stage per
/// record. Records with a single digest verify the final digest only;
/// records with one digest per stage verify the whole trace.
pub fn verify(records: &[VectorRecord], variant: ChainVariant) -> Vec<VerifyFailure> {
    let names = crate::chain::stage_names(variant);
    let mut failures = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        if rec.digests.len() == 1 {
            let actual = chain_hash(&rec.header, variant);
            if actual != rec.digests[0] {
                failures.push(VerifyFailure {
                    record: i,
                    stage: names.last().unwrap(),
                    expected: rec.digests[0],
                    actual,
                });
            }
            continue;
        }
        let actual = stage_outputs(&rec.header, variant);
        let n = actual.len().min(rec.digests.len());
        for s in 0..n {
            if actual[s] != rec.digests[s] {
                failures.push(VerifyFailure {
                    record: i,
                    stage: names[s],
                    expected: rec.digests[s],
                    actual: actual[s],
                });
                break;
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_headers_are_reproducible() {
        let a = seeded_headers(42, 3);
        let b = seeded_headers(42, 3);
        assert_eq!(a, b);
        assert_ne!(seeded_headers(43, 3), a);
    }

    #[test]
    fn line_round_trip() {
        let recs = generate(7, 2, ChainVariant::Rev2, true);
        let text: String = recs.iter().map(|r| r.to_line() + "\n").collect();
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed, recs);
    }

    #[test]
    fn verify_clean_corpus() {
        let recs = generate(7, 4, ChainVariant::Rev3, true);
        assert!(verify(&recs, ChainVariant::Rev3).is_empty());
    }

    #[test]
    fn verify_names_first_diverging_stage() {
        let mut recs = generate(7, 3, ChainVariant::Rev2, true);
        // Corrupt stage 2 of record 1.
        recs[1].digests[2][0] ^= 0xff;
        let failures = verify(&recs, ChainVariant::Rev2);
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].record, 1);
        assert_eq!(failures[0].stage, "cubehash256");
    }

    #[test]
    fn parse_errors_name_line_and_field() {
        assert_eq!(parse("zz\tabcd\n"), Err(VectorParseError::BadHex(1, 0)));
        let short = format!("{}\tdead\n", "00".repeat(80));
        assert_eq!(parse(&short), Err(VectorParseError::BadDigestLen(1)));
    }

    #[test]
    fn comments_and_blank_lines_skip() {
        let recs = generate(9, 1, ChainVariant::Rev2, false);
        let text = format!("# corpus\n\n{}\n", recs[0].to_line());
        assert_eq!(parse(&text).unwrap(), recs);
    }
}
