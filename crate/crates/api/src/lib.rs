//! Wire types for the lyra2re HTTP/JSON service, shared by the server and
//! the client. Binary values travel as lowercase hex strings.

use lyra2re_core::chain::ChainVariant;
use lyra2re_core::pipeline::{PipelineSpec, PlanResult, SimReport, StageSpec};
use serde::{Deserialize, Serialize};

pub const API_VERSION: &str = "v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HashRequest {
    /// 160 hex chars: the 80-byte block header.
    pub header: String,
    pub variant: ChainVariant,
    /// Return the digest after every stage, not just the final one.
    #[serde(default)]
    pub stages: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HashResponse {
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stages: Option<Vec<StageDigest>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageDigest {
    pub stage: String,
    pub digest: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanRequest {
    pub stages: Vec<StageSpec>,
    pub target_mhash_s: f64,
}

pub type PlanResponse = PlanResult;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimulateRequest {
    pub spec: PipelineSpec,
    /// Defaults to 10 000 µs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizon_us: Option<f64>,
}

pub type SimulateResponse = SimReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobRequest {
    /// 160 hex chars; the embedded nonce field is the starting nonce unless
    /// `start_nonce` overrides it.
    pub header: String,
    /// Compact target, 8 hex chars.
    pub nbits: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start_nonce: Option<u32>,
    pub max_nonce: u32,
    pub variant: ChainVariant,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JobState {
    Running,
    WinningNonceFound,
    NonceNotFound,
    Flushed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobStatus {
    pub id: u64,
    pub state: JobState,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winning_nonce: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winning_hash: Option<String>,
    /// Hash evaluations performed (final for terminal states).
    pub evaluated: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobCreated {
    pub id: u64,
    /// Id of the search this submission flushed, if one was running.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flushed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorsGenerateRequest {
    pub seed: u64,
    pub count: usize,
    pub variant: ChainVariant,
    /// Include per-stage digests in each record.
    #[serde(default)]
    pub stages: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorsGenerateResponse {
    /// Tab-separated hex records, one per line.
    pub records: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorsVerifyRequest {
    pub records: Vec<String>,
    pub variant: ChainVariant,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorFailure {
    pub record: usize,
    pub stage: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VectorsVerifyResponse {
    pub checked: usize,
    pub ok: bool,
    pub failures: Vec<VectorFailure>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchRequest {
    pub variant: ChainVariant,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchResponse {
    pub variant: ChainVariant,
    pub chain_hashes_per_sec: f64,
    pub stages: Vec<StageBench>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageBench {
    pub stage: String,
    pub hashes_per_sec: f64,
}

/// Error body returned with non-2xx statuses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
}
