//! `lyra2re` — command-line front end for chain hashing, mining, vector
//! corpora and pipeline planning.
//!
//! All commands run against the HTTP service: either an external one named
//! with `--server` (or `LYRA2RE_SERVER`), or an in-process instance spun up
//! on a loopback port for the duration of the command.
//!
//! Exit codes: 0 success/found, 1 usage, 2 nonce range exhausted,
//! 3 internal/verification failure.

use clap::{Parser, Subcommand};
use lyra2re_api as api;
use lyra2re_client::{Client, ClientError};
use lyra2re_core::chain::{ChainVariant, HEADER_BYTES};
use lyra2re_core::pipeline::{plan_table, sim_table, PipelineSpec};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_FOUND: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lyra2re",
    version,
    about = "Lyra2REv2/v3 hashing, mining and pipeline planning"
)]
struct Cli {
    /// Service URL (e.g. http://127.0.0.1:8460); without it an in-process
    /// service is started for this invocation.
    #[arg(long, global = true, env = "LYRA2RE_SERVER")]
    server: Option<String>,

    #[command(subcommand)]
    command: Command,
}

fn parse_variant(s: &str) -> Result<ChainVariant, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Subcommand)]
enum Command {
    /// Hash an 80-byte block header (160 hex chars).
    Hash {
        /// Header as 160 lowercase hex chars.
        header: String,
        #[arg(long, value_parser = parse_variant, default_value = "rev2")]
        variant: ChainVariant,
        /// Print the digest after every stage, one line per stage.
        #[arg(long)]
        stages: bool,
    },
    /// Search a nonce range for a hash below the compact target.
    Mine {
        /// Header as 152 hex chars (nonce appended from --start) or
        /// 160 hex chars (embedded nonce is the start unless --start is
        /// given).
        header: String,
        /// Compact target, 8 hex chars (e.g. 1e0fffff).
        #[arg(long)]
        nbits: String,
        /// Starting nonce.
        #[arg(long)]
        start: Option<u32>,
        /// Maximum nonce (inclusive).
        #[arg(long, default_value_t = u32::MAX)]
        max: u32,
        /// Worker threads (defaults to available parallelism).
        #[arg(long, env = "LYRA2RE_WORKERS")]
        workers: Option<usize>,
        #[arg(long, value_parser = parse_variant, default_value = "rev2")]
        variant: ChainVariant,
    },
    /// Plan per-stage replication for a target throughput.
    Plan {
        /// Pipeline description (TOML).
        #[arg(long)]
        spec: PathBuf,
        /// Target throughput in MHash/s.
        #[arg(long)]
        target: f64,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Simulate the pipeline and report steady-state throughput.
    Simulate {
        /// Pipeline description (TOML).
        #[arg(long)]
        spec: PathBuf,
        /// Simulated horizon in microseconds.
        #[arg(long, default_value_t = 10_000.0)]
        horizon_us: f64,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Generate or verify known-answer vector corpora.
    Vectors {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        count: usize,
        #[arg(long, value_parser = parse_variant, default_value = "rev2")]
        variant: ChainVariant,
        /// Include the digest after every stage in each record.
        #[arg(long)]
        stages: bool,
        /// Write generated records here instead of stdout.
        #[arg(long, conflicts_with = "verify")]
        out: Option<PathBuf>,
        /// Verify an existing corpus file instead of generating.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Measure sustained software hash rates (informational).
    Bench {
        #[arg(long, value_parser = parse_variant, default_value = "rev2")]
        variant: ChainVariant,
        #[arg(long, default_value_t = 5.0)]
        seconds: f64,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

/// Input-validation rejections from the service map to usage errors.
fn client_error(e: ClientError) -> ExitCode {
    match e {
        ClientError::Api { status, message } if status.as_u16() == 400 => fail(EXIT_USAGE, message),
        other => fail(EXIT_INTERNAL, other),
    }
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let (client, _local) = match connect(cli.server).await {
        Ok(pair) => pair,
        Err(e) => return fail(EXIT_INTERNAL, e),
    };

    match cli.command {
        Command::Hash {
            header,
            variant,
            stages,
        } => cmd_hash(&client, header, variant, stages).await,
        Command::Mine {
            header,
            nbits,
            start,
            max,
            workers,
            variant,
        } => cmd_mine(&client, header, nbits, start, max, workers, variant).await,
        Command::Plan { spec, target, json } => cmd_plan(&client, spec, target, json).await,
        Command::Simulate {
            spec,
            horizon_us,
            json,
        } => cmd_simulate(&client, spec, horizon_us, json).await,
        Command::Vectors {
            seed,
            count,
            variant,
            stages,
            out,
            verify,
        } => cmd_vectors(&client, seed, count, variant, stages, out, verify).await,
        Command::Bench { variant, seconds } => cmd_bench(&client, variant, seconds).await,
    }
}

/// Connects to the given server, or starts an in-process one on a loopback
/// port. The returned guard keeps the in-process server task alive.
async fn connect(
    server: Option<String>,
) -> Result<(Client, Option<tokio::task::JoinHandle<()>>), String> {
    if let Some(url) = server {
        return Ok((Client::new(url), None));
    }
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0")
        .await
        .map_err(|e| format!("cannot bind loopback service: {e}"))?;
    let addr = listener.local_addr().map_err(|e| e.to_string())?;
    let handle = tokio::spawn(async move {
        let _ = axum::serve(listener, lyra2re_service::router()).await;
    });
    Ok((Client::new(format!("http://{addr}")), Some(handle)))
}

fn check_header_hex(header: &str, expect_bytes: &[usize]) -> Result<(), String> {
    let header = header.trim();
    if !header.chars().all(|c| c.is_ascii_hexdigit()) || !header.len().is_multiple_of(2) {
        return Err("header is not valid hex".into());
    }
    let bytes = header.len() / 2;
    if !expect_bytes.contains(&bytes) {
        return Err(format!(
            "header must be {} bytes, got {bytes}",
            expect_bytes
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(" or ")
        ));
    }
    Ok(())
}

async fn cmd_hash(
    client: &Client,
    header: String,
    variant: ChainVariant,
    stages: bool,
) -> ExitCode {
    if let Err(e) = check_header_hex(&header, &[HEADER_BYTES]) {
        return fail(EXIT_USAGE, e);
    }
    let req = api::HashRequest {
        header: header.trim().to_ascii_lowercase(),
        variant,
        stages,
    };
    match client.hash(&req).await {
        Ok(resp) => {
            if let Some(stage_digests) = resp.stages {
                for s in stage_digests {
                    println!("{:<12} {}", s.stage, s.digest);
                }
            } else {
                println!("{}", resp.digest);
            }
            ExitCode::SUCCESS
        }
        Err(e) => client_error(e),
    }
}

#[allow(clippy::too_many_arguments)]
async fn cmd_mine(
    client: &Client,
    header: String,
    nbits: String,
    start: Option<u32>,
    max: u32,
    workers: Option<usize>,
    variant: ChainVariant,
) -> ExitCode {
    let header = header.trim().to_ascii_lowercase();
    if let Err(e) = check_header_hex(&header, &[HEADER_BYTES - 4, HEADER_BYTES]) {
        return fail(EXIT_USAGE, e);
    }
    // A 76-byte template takes its nonce field from --start.
    let (full_header, start_nonce) = if header.len() == (HEADER_BYTES - 4) * 2 {
        let start = start.unwrap_or(0);
        (
            format!("{header}{}", hex::encode(start.to_le_bytes())),
            Some(start),
        )
    } else {
        (header, start)
    };

    let req = api::JobRequest {
        header: full_header,
        nbits,
        start_nonce,
        max_nonce: max,
        variant,
        workers,
    };
    let created = match client.submit_job(&req).await {
        Ok(c) => c,
        Err(e) => return client_error(e),
    };
    let status = match client
        .wait_for_job(created.id, Duration::from_millis(50))
        .await
    {
        Ok(s) => s,
        Err(e) => return client_error(e),
    };
    match status.state {
        api::JobState::WinningNonceFound => {
            println!(
                "WINNING_NONCE_FOUND nonce={} hash={}",
                status.winning_nonce.unwrap_or_default(),
                status.winning_hash.unwrap_or_default()
            );
            ExitCode::SUCCESS
        }
        api::JobState::NonceNotFound => {
            println!("NONCE_NOT_FOUND evaluated={}", status.evaluated);
            ExitCode::from(EXIT_NOT_FOUND)
        }
        api::JobState::Flushed => {
            println!("FLUSHED");
            ExitCode::from(EXIT_INTERNAL)
        }
        api::JobState::Running => unreachable!("wait_for_job returns terminal states"),
    }
}

fn load_spec(path: &PathBuf) -> Result<PipelineSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    PipelineSpec::from_toml_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

async fn cmd_plan(client: &Client, spec: PathBuf, target: f64, json: bool) -> ExitCode {
    let spec = match load_spec(&spec) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let req = api::PlanRequest {
        stages: spec.stages.clone(),
        target_mhash_s: target,
    };
    match client.plan(&req).await {
        Ok(plan) => {
            if json {
                let doc = serde_json::json!({ "stages": spec.stages, "plan": plan });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print!("{}", plan_table(&spec.stages, &plan));
            }
            ExitCode::SUCCESS
        }
        Err(e) => client_error(e),
    }
}

async fn cmd_simulate(client: &Client, spec: PathBuf, horizon_us: f64, json: bool) -> ExitCode {
    let spec = match load_spec(&spec) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let req = api::SimulateRequest {
        spec: spec.clone(),
        horizon_us: Some(horizon_us),
    };
    match client.simulate(&req).await {
        Ok(report) => {
            if json {
                let doc = serde_json::json!({ "spec": spec, "report": report });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print!("{}", sim_table(&spec, &report));
            }
            ExitCode::SUCCESS
        }
        Err(e) => client_error(e),
    }
}

async fn cmd_vectors(
    client: &Client,
    seed: u64,
    count: usize,
    variant: ChainVariant,
    stages: bool,
    out: Option<PathBuf>,
    verify: Option<PathBuf>,
) -> ExitCode {
    if let Some(path) = verify {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())),
        };
        let records: Vec<String> = text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(str::to_string)
            .collect();
        let req = api::VectorsVerifyRequest { records, variant };
        return match client.vectors_verify(&req).await {
            Ok(resp) if resp.ok => {
                println!("{} records verified", resp.checked);
                ExitCode::SUCCESS
            }
            Ok(resp) => {
                for f in &resp.failures {
                    println!(
                        "record {} diverges at {}: expected {} got {}",
                        f.record, f.stage, f.expected, f.actual
                    );
                }
                eprintln!(
                    "error: {} of {} records diverge",
                    resp.failures.len(),
                    resp.checked
                );
                ExitCode::from(EXIT_INTERNAL)
            }
            Err(e) => client_error(e),
        };
    }

    let req = api::VectorsGenerateRequest {
        seed,
        count,
        variant,
        stages,
    };
    match client.vectors_generate(&req).await {
        Ok(resp) => {
            let mut body = resp.records.join("\n");
            if !body.is_empty() {
                body.push('\n');
            }
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        return fail(
                            EXIT_INTERNAL,
                            format!("cannot write {}: {e}", path.display()),
                        );
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => client_error(e),
    }
}

async fn cmd_bench(client: &Client, variant: ChainVariant, seconds: f64) -> ExitCode {
    let req = api::BenchRequest { variant, seconds };
    match client.bench(&req).await {
        Ok(resp) => {
            println!(
                "chain {variant}: {:.0} hashes/s (single thread)",
                resp.chain_hashes_per_sec
            );
            for s in resp.stages {
                println!("{:<12} {:>12.0} hashes/s", s.stage, s.hashes_per_sec);
            }
            println!("software rates are informational; no hardware figure is implied");
            ExitCode::SUCCESS
        }
        Err(e) => client_error(e),
    }
}
