//! Nonce search with monotone increment, threshold verification and flush
//! semantics.
//!
//! The nonce range is split into contiguous sub-ranges, one per worker.
//! Each worker scans its range in ascending order, so its first hit is its
//! smallest; a shared best-so-far lets workers whose whole range lies above
//! a confirmed winner stop early. The reported winner is therefore the
//! smallest in range, independent of worker count.

use crate::chain::{chain_hash, ChainVariant};
use crate::pow::header::BlockHeader;
use crate::pow::target::{meets_target, U256};
use crate::primitives::Digest256;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

/// Cooperative cancellation signal for an in-flight search; clone freely,
/// fire from any thread.
#[derive(Clone, Debug, Default)]
pub struct CancelFlag(Arc<AtomicBool>);

impl CancelFlag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::SeqCst)
    }
}

/// One nonce-search work order: the header template carries the starting
/// nonce.
#[derive(Clone, Copy, Debug)]
pub struct SearchJob {
    pub header: BlockHeader,
    pub target: U256,
    pub max_nonce: u32,
    pub variant: ChainVariant,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchJobError {
    #[error("starting nonce {start} exceeds maximum nonce {max}")]
    EmptyRange { start: u32, max: u32 },
}

impl SearchJob {
    pub fn validate(&self) -> Result<(), SearchJobError> {
        if self.header.nonce > self.max_nonce {
            return Err(SearchJobError::EmptyRange {
                start: self.header.nonce,
                max: self.max_nonce,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    WinningNonceFound,
    NonceNotFound,
    Flushed,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub winning_nonce: Option<u32>,
    pub winning_hash: Option<Digest256>,
    /// Hash evaluations actually performed.
    pub evaluated: u64,
}

/// Scans `job.header.nonce ..= job.max_nonce` for the smallest nonce whose
/// chained hash is strictly below the target.
///
/// Returns the smallest winner in range, `NonceNotFound` on exhaustion, or
/// `Flushed` if `cancel` fired before either outcome was established. After
/// cancellation no new nonce evaluations begin. If a winner was already
/// found when the flush arrives it is still reported, though it may then
/// not be the smallest in range.
pub fn search(job: &SearchJob, workers: usize, cancel: &CancelFlag) -> SearchOutcome {
    debug_assert!(job.validate().is_ok());
    let workers = workers.max(1);
    let start = job.header.nonce;
    let end = job.max_nonce;
    let total = (end - start) as u64 + 1;
    let per_worker = total.div_ceil(workers as u64);

    let best = AtomicU64::new(u64::MAX);
    let evaluated = AtomicU64::new(0);

    std::thread::scope(|scope| {
        for w in 0..workers {
            let lo64 = start as u64 + w as u64 * per_worker;
            if lo64 > end as u64 {
                break;
            }
            let hi64 = (lo64 + per_worker - 1).min(end as u64);
            let (lo, hi) = (lo64 as u32, hi64 as u32);
            let best = &best;
            let evaluated = &evaluated;
            let header = job.header;
            let target = job.target;
            let variant = job.variant;
            scope.spawn(move || {
                let mut local_evals = 0u64;
                let mut nonce = lo;
                loop {
                    if cancel.is_cancelled() {
                        break;
                    }
                    // A confirmed winner below this whole range makes it moot.
                    if best.load(Ordering::Relaxed) < lo as u64 {
                        break;
                    }
                    let bytes = header.with_nonce(nonce).encode();
                    let digest = chain_hash(&bytes, variant);
                    local_evals += 1;
                    if meets_target(&digest, &target) {
                        best.fetch_min(nonce as u64, Ordering::SeqCst);
                        break; // ascending scan: first hit is this range's smallest
                    }
                    if nonce == hi {
                        break;
                    }
                    nonce += 1;
                }
                evaluated.fetch_add(local_evals, Ordering::Relaxed);
            });
        }
    });

    let evaluated = evaluated.load(Ordering::Relaxed);
    let winner = best.load(Ordering::SeqCst);
    if winner != u64::MAX {
        let nonce = winner as u32;
        let digest = chain_hash(&job.header.with_nonce(nonce).encode(), job.variant);
        SearchOutcome {
            status: SearchStatus::WinningNonceFound,
            winning_nonce: Some(nonce),
            winning_hash: Some(digest),
            evaluated,
        }
    } else if cancel.is_cancelled() {
        SearchOutcome {
            status: SearchStatus::Flushed,
            winning_nonce: None,
            winning_hash: None,
            evaluated,
        }
    } else {
        SearchOutcome {
            status: SearchStatus::NonceNotFound,
            winning_nonce: None,
            winning_hash: None,
            evaluated,
        }
    }
}

/// Recomputes the chained hash of the header and applies the threshold
/// comparison.
pub fn verify_solution(header: &BlockHeader, variant: ChainVariant, target: &U256) -> bool {
    meets_target(&chain_hash(&header.encode(), variant), target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pow::target::expand_target;

    fn job(start: u32, max: u32, target: U256) -> SearchJob {
        SearchJob {
            header: BlockHeader {
                version: 2,
                prev_block_hash: [0x11; 32],
                merkle_root: [0x22; 32],
                time: 1_500_000_000,
                nbits: 0x1e0fffff,
                nonce: start,
            },
            target,
            max_nonce: max,
            variant: ChainVariant::Rev2,
        }
    }

    #[test]
    fn max_target_wins_immediately() {
        let j = job(42, 100, U256::MAX);
        let out = search(&j, 4, &CancelFlag::new());
        assert_eq!(out.status, SearchStatus::WinningNonceFound);
        assert_eq!(out.winning_nonce, Some(42));
        assert!(verify_solution(
            &j.header.with_nonce(42),
            j.variant,
            &j.target
        ));
    }

    #[test]
    fn zero_target_exhausts_range() {
        let j = job(0, 199, U256::ZERO);
        let out = search(&j, 3, &CancelFlag::new());
        assert_eq!(out.status, SearchStatus::NonceNotFound);
        assert_eq!(out.winning_nonce, None);
        assert_eq!(out.evaluated, 200);
    }

    #[test]
    fn cancelled_before_start_reports_flushed() {
        let cancel = CancelFlag::new();
        cancel.cancel();
        let j = job(0, 10_000, U256::ZERO);
        let out = search(&j, 2, &cancel);
        assert_eq!(out.status, SearchStatus::Flushed);
        assert_eq!(out.evaluated, 0, "no evaluations after flush");
    }

    #[test]
    fn smallest_winner_across_worker_counts() {
        // A loose target over a small window; every worker split must agree
        // with the single-threaded result.
        let target = expand_target(0x1f00ffff).unwrap();
        let j = job(0, 2047, target);
        let reference = search(&j, 1, &CancelFlag::new());
        for workers in [2, 3, 5, 8] {
            let out = search(&j, workers, &CancelFlag::new());
            assert_eq!(out.status, reference.status);
            assert_eq!(out.winning_nonce, reference.winning_nonce);
            assert_eq!(out.winning_hash, reference.winning_hash);
        }
    }

    #[test]
    fn monotone_in_target() {
        // If a nonce wins at target t1 it wins at any t2 ≥ t1.
        let t1 = expand_target(0x1f00ffff).unwrap();
        let t2 = expand_target(0x2000ffff).unwrap();
        assert!(t1 < t2);
        let j = job(0, 4095, t1);
        let out = search(&j, 4, &CancelFlag::new());
        if let Some(n) = out.winning_nonce {
            assert!(verify_solution(&j.header.with_nonce(n), j.variant, &t2));
        }
    }
}
