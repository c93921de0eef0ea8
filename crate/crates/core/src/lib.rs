//! Lyra2REv2 and Lyra2REv3 chained proof-of-work hashing, a software miner
//! engine, and a throughput planner/simulator for replicated hashing
//! pipelines.
//!
//! The crate is organised around the pieces a standalone miner needs:
//!
//! * [`sponge`] — the BLAKE2b-based duplex sponge driving Lyra2.
//! * [`lyra2`] — the simplified Lyra2 used by Lyra2REv2 and the Lyra2MOD
//!   variant used by Lyra2REv3.
//! * [`primitives`] — the auxiliary hash cores (BLAKE-256, Keccak-256,
//!   CubeHash-256, Skein-256, BMW-256) specialised to the chain's fixed
//!   input widths.
//! * [`chain`] — composition of the stages into the two chains.
//! * [`pow`] — block-header codec, compact-target handling and the nonce
//!   search with flush semantics.
//! * [`pipeline`] — analytic replication planner and discrete-event
//!   simulator for balancing a heterogeneous hashing pipeline.
//! * [`vectors`] — generation and verification of known-answer vector
//!   corpora.

pub mod chain;
pub mod counters;
pub mod lyra2;
pub mod pipeline;
pub mod pow;
pub mod primitives;
pub mod sponge;
pub mod vectors;

pub use chain::{chain_hash, stage_outputs, ChainVariant, HEADER_BYTES};
pub use pow::{
    expand_target, meets_target, search, verify_solution, BlockHeader, CancelFlag, SearchJob,
    SearchOutcome, SearchStatus,
};
