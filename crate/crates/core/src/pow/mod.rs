//! The miner control plane: block-header codec, compact-target handling,
//! nonce search with monotone increment and flush semantics, and threshold
//! verification.

mod header;
mod search;
mod target;

pub use header::BlockHeader;
pub use search::{
    search, verify_solution, CancelFlag, SearchJob, SearchJobError, SearchOutcome, SearchStatus,
};
pub use target::{expand_target, meets_target, TargetError, U256};
