//! HTTP/JSON service exposing the chain hashes, the miner engine and the
//! pipeline planner/simulator.
//!
//! The job endpoints mirror the control flow of a standalone miner: one
//! search is active at a time, submitting a new job flushes the running
//! one (the new-block semantics), and clients poll the job status until
//! the winning-nonce-found or nonce-not-found state appears.

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{delete, get, post};
use axum::{Json, Router};
use lyra2re_api as api;
use lyra2re_core::chain::{chain_hash, stage_names, stage_outputs, ChainVariant, HEADER_BYTES};
use lyra2re_core::pipeline::{plan_replication, simulate};
use lyra2re_core::pow::BlockHeader;
use lyra2re_core::pow::{expand_target, search, CancelFlag, SearchJob, SearchStatus};
use lyra2re_core::primitives::{blake256_header, bmw256, cubehash256, keccak256, skein256};
use lyra2re_core::vectors;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

/// Upper bound on one bench request, seconds.
const MAX_BENCH_SECONDS: f64 = 30.0;
/// Upper bound on vectors generated per request.
const MAX_VECTOR_COUNT: usize = 65_536;

#[derive(Clone, Debug)]
struct JobEntry {
    state: api::JobState,
    winning_nonce: Option<u32>,
    winning_hash: Option<[u8; 32]>,
    evaluated: u64,
}

#[derive(Default)]
struct MinerState {
    next_id: u64,
    jobs: HashMap<u64, JobEntry>,
    active: Option<(u64, CancelFlag)>,
}

/// Shared service state.
#[derive(Clone, Default)]
pub struct AppState {
    miner: Arc<Mutex<MinerState>>,
}

/// Builds the service router.
pub fn router() -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/v1/hash", post(hash))
        .route("/v1/plan", post(plan))
        .route("/v1/simulate", post(simulate_handler))
        .route("/v1/jobs", post(submit_job))
        .route("/v1/jobs/:id", get(job_status))
        .route("/v1/jobs/:id", delete(flush_job))
        .route("/v1/vectors/generate", post(vectors_generate))
        .route("/v1/vectors/verify", post(vectors_verify))
        .route("/v1/bench", post(bench))
        .with_state(AppState::default())
}

struct ApiError(StatusCode, String);

impl ApiError {
    fn bad_request(msg: impl Into<String>) -> Self {
        ApiError(StatusCode::BAD_REQUEST, msg.into())
    }

    fn not_found(msg: impl Into<String>) -> Self {
        ApiError(StatusCode::NOT_FOUND, msg.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(api::ErrorBody { error: self.1 })).into_response()
    }
}

fn parse_header_hex(hex_str: &str) -> Result<[u8; HEADER_BYTES], ApiError> {
    let bytes = hex::decode(hex_str.trim())
        .map_err(|_| ApiError::bad_request("header is not valid hex"))?;
    bytes.try_into().map_err(|_| {
        ApiError::bad_request(format!(
            "header must be exactly {HEADER_BYTES} bytes (160 hex chars)"
        ))
    })
}

async fn health() -> Json<api::Health> {
    Json(api::Health {
        status: "ok".into(),
        version: env!("CARGO_PKG_VERSION").into(),
    })
}

async fn hash(Json(req): Json<api::HashRequest>) -> Result<Json<api::HashResponse>, ApiError> {
    let header = parse_header_hex(&req.header)?;
    let stages = if req.stages {
        let names = stage_names(req.variant);
        let digests = stage_outputs(&header, req.variant);
        Some(
            names
                .into_iter()
                .zip(digests)
                .map(|(stage, digest)| api::StageDigest {
                    stage: stage.to_string(),
                    digest: hex::encode(digest),
                })
                .collect(),
        )
    } else {
        None
    };
    let digest = hex::encode(chain_hash(&header, req.variant));
    Ok(Json(api::HashResponse { digest, stages }))
}

async fn plan(Json(req): Json<api::PlanRequest>) -> Result<Json<api::PlanResponse>, ApiError> {
    plan_replication(&req.stages, req.target_mhash_s)
        .map(Json)
        .map_err(|e| ApiError::bad_request(e.to_string()))
}

async fn simulate_handler(
    Json(req): Json<api::SimulateRequest>,
) -> Result<Json<api::SimulateResponse>, ApiError> {
    let horizon = req.horizon_us.unwrap_or(10_000.0);
    let spec = req.spec;
    // A full-chain run takes a second or two of CPU.
    let report = tokio::task::spawn_blocking(move || simulate(&spec, horizon))
        .await
        .expect("simulation task")
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(Json(report))
}

async fn submit_job(
    State(state): State<AppState>,
    Json(req): Json<api::JobRequest>,
) -> Result<Json<api::JobCreated>, ApiError> {
    // The target threshold is carried separately from the header bytes;
    // the template's own nbits field is hashed as given.
    let header_bytes = parse_header_hex(&req.header)?;
    let nbits_raw = u32::from_str_radix(req.nbits.trim().trim_start_matches("0x"), 16)
        .map_err(|_| ApiError::bad_request("nbits must be 8 hex chars"))?;
    let target =
        expand_target(nbits_raw).map_err(|e| ApiError::bad_request(format!("nbits: {e}")))?;
    let mut header = BlockHeader::decode(&header_bytes);
    if let Some(start) = req.start_nonce {
        header.nonce = start;
    }
    let job = SearchJob {
        header,
        target,
        max_nonce: req.max_nonce,
        variant: req.variant,
    };
    job.validate()
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let workers = req.workers.unwrap_or_else(default_workers).max(1);

    let (id, flushed, cancel) = {
        let mut miner = state.miner.lock().unwrap();
        // New block data flushes the ongoing search.
        let flushed = miner.active.take().map(|(prev_id, prev_cancel)| {
            prev_cancel.cancel();
            prev_id
        });
        miner.next_id += 1;
        let id = miner.next_id;
        let cancel = CancelFlag::new();
        miner.jobs.insert(
            id,
            JobEntry {
                state: api::JobState::Running,
                winning_nonce: None,
                winning_hash: None,
                evaluated: 0,
            },
        );
        miner.active = Some((id, cancel.clone()));
        (id, flushed, cancel)
    };

    let miner_state = state.miner.clone();
    tokio::task::spawn_blocking(move || {
        let outcome = search(&job, workers, &cancel);
        let mut miner = miner_state.lock().unwrap();
        if let Some(entry) = miner.jobs.get_mut(&id) {
            entry.state = match outcome.status {
                SearchStatus::WinningNonceFound => api::JobState::WinningNonceFound,
                SearchStatus::NonceNotFound => api::JobState::NonceNotFound,
                SearchStatus::Flushed => api::JobState::Flushed,
            };
            entry.winning_nonce = outcome.winning_nonce;
            entry.winning_hash = outcome.winning_hash;
            entry.evaluated = outcome.evaluated;
        }
        if let Some((active_id, _)) = &miner.active {
            if *active_id == id {
                miner.active = None;
            }
        }
    });

    Ok(Json(api::JobCreated { id, flushed }))
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn status_of(id: u64, entry: &JobEntry) -> api::JobStatus {
    api::JobStatus {
        id,
        state: entry.state,
        winning_nonce: entry.winning_nonce,
        winning_hash: entry.winning_hash.map(hex::encode),
        evaluated: entry.evaluated,
    }
}

async fn job_status(
    State(state): State<AppState>,
    Path(id): Path<u64>,
) -> Result<Json<api::JobStatus>, ApiError> {
    let miner = state.miner.lock().unwrap();
    miner
        .jobs
        .get(&id)
        .map(|e| Json(status_of(id, e)))
        .ok_or_else(|| ApiError::not_found(format!("no job {id}")))
}

async fn flush_job(
    State(state): State<AppState>,
    Path(id): Path<u64>,
) -> Result<Json<api::JobStatus>, ApiError> {
    let mut miner = state.miner.lock().unwrap();
    if let Some((active_id, cancel)) = &miner.active {
        if *active_id == id {
            cancel.cancel();
            miner.active = None;
        }
    }
    miner
        .jobs
        .get(&id)
        .map(|e| Json(status_of(id, e)))
        .ok_or_else(|| ApiError::not_found(format!("no job {id}")))
}

async fn vectors_generate(
    Json(req): Json<api::VectorsGenerateRequest>,
) -> Result<Json<api::VectorsGenerateResponse>, ApiError> {
    if req.count > MAX_VECTOR_COUNT {
        return Err(ApiError::bad_request(format!(
            "count exceeds {MAX_VECTOR_COUNT}"
        )));
    }
    let (seed, count, variant, stages) = (req.seed, req.count, req.variant, req.stages);
    let records = tokio::task::spawn_blocking(move || {
        vectors::generate(seed, count, variant, stages)
            .iter()
            .map(|r| r.to_line())
            .collect()
    })
    .await
    .expect("vector task");
    Ok(Json(api::VectorsGenerateResponse { records }))
}

async fn vectors_verify(
    Json(req): Json<api::VectorsVerifyRequest>,
) -> Result<Json<api::VectorsVerifyResponse>, ApiError> {
    let text = req.records.join("\n");
    let records = vectors::parse(&text).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let variant = req.variant;
    let checked = records.len();
    let failures = tokio::task::spawn_blocking(move || vectors::verify(&records, variant))
        .await
        .expect("verify task");
    Ok(Json(api::VectorsVerifyResponse {
        checked,
        ok: failures.is_empty(),
        failures: failures
            .into_iter()
            .map(|f| api::VectorFailure {
                record: f.record,
                stage: f.stage.to_string(),
                expected: hex::encode(f.expected),
                actual: hex::encode(f.actual),
            })
            .collect(),
    }))
}

async fn bench(Json(req): Json<api::BenchRequest>) -> Result<Json<api::BenchResponse>, ApiError> {
    if !(req.seconds > 0.0 && req.seconds <= MAX_BENCH_SECONDS) {
        return Err(ApiError::bad_request(format!(
            "seconds must be in (0, {MAX_BENCH_SECONDS}]"
        )));
    }
    let variant = req.variant;
    let seconds = req.seconds;
    let response = tokio::task::spawn_blocking(move || run_bench(variant, seconds))
        .await
        .expect("bench task");
    Ok(Json(response))
}

fn run_bench(variant: ChainVariant, seconds: f64) -> api::BenchResponse {
    let chain_budget = seconds * 0.5;
    let start = Instant::now();
    let mut header = [0u8; HEADER_BYTES];
    let mut n = 0u64;
    while start.elapsed().as_secs_f64() < chain_budget {
        header[76..80].copy_from_slice(&(n as u32).to_le_bytes());
        std::hint::black_box(chain_hash(&header, variant));
        n += 1;
    }
    let chain_rate = n as f64 / start.elapsed().as_secs_f64();

    let names = stage_names(variant);
    let per_stage_budget = seconds * 0.5 / names.len() as f64;
    let value = [7u8; 32];
    let stages = names
        .into_iter()
        .map(|stage| {
            let start = Instant::now();
            let mut n = 0u64;
            while start.elapsed().as_secs_f64() < per_stage_budget {
                match stage {
                    "blake256" => {
                        std::hint::black_box(blake256_header(&header));
                    }
                    "keccak256" => {
                        std::hint::black_box(keccak256(&value));
                    }
                    "cubehash256" => {
                        std::hint::black_box(cubehash256(&value));
                    }
                    "skein256" => {
                        std::hint::black_box(skein256(&value));
                    }
                    "lyra2" => {
                        std::hint::black_box(lyra2re_core::lyra2::lyra2_hash_256(
                            &value,
                            lyra2re_core::lyra2::Lyra2Variant::Rev2,
                        ));
                    }
                    _ => {
                        // lyra2mod and bmw256
                        if stage == "lyra2mod" {
                            std::hint::black_box(lyra2re_core::lyra2::lyra2_hash_256(
                                &value,
                                lyra2re_core::lyra2::Lyra2Variant::Mod,
                            ));
                        } else {
                            std::hint::black_box(bmw256(&value));
                        }
                    }
                }
                n += 1;
            }
            api::StageBench {
                stage: stage.to_string(),
                hashes_per_sec: n as f64 / start.elapsed().as_secs_f64(),
            }
        })
        .collect();

    api::BenchResponse {
        variant,
        chain_hashes_per_sec: chain_rate,
        stages,
    }
}
