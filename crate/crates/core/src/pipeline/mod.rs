//! Throughput model of a heterogeneous hashing pipeline: replicated cores
//! per stage, round-robin schedulers and bounded FIFOs between stages.
//!
//! [`plan`] gives the analytic replication plan for a target throughput;
//! [`sim`] runs a deterministic discrete-event simulation honoring FIFO
//! back-pressure; [`report`] renders both as text tables.

pub mod plan;
pub mod report;
pub mod sim;

pub use plan::{plan_replication, stage_throughput, PlanError, PlanResult, StagePlan};
pub use report::{plan_table, sim_table};
pub use sim::{simulate, SimError, SimReport, StageStats};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One pipeline stage: a hashing core design plus its replica count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageSpec {
    pub name: String,
    /// Core clock in MHz.
    pub freq_mhz: f64,
    /// Initiation interval: clock cycles between accepted hashes on one core.
    pub cc_per_hash: u32,
    /// Concurrent hashes in flight inside one core.
    #[serde(default = "one")]
    pub pipeline_depth: u32,
    /// Cores instantiated for this stage.
    #[serde(default = "one")]
    pub replicas: u32,
}

fn one() -> u32 {
    1
}

/// A full chain: ordered stages plus the per-link FIFO capacity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineSpec {
    /// Elements each inter-stage FIFO can hold.
    pub fifo_depth: u32,
    pub stages: Vec<StageSpec>,
}

#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("pipeline has no stages")]
    Empty,
    #[error("stage {index} ({name}): {field} must be positive")]
    NonPositive {
        index: usize,
        name: String,
        field: &'static str,
    },
    #[error("line {0}: {1}")]
    Parse(usize, String),
}

impl PipelineSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.stages.is_empty() {
            return Err(SpecError::Empty);
        }
        for (index, s) in self.stages.iter().enumerate() {
            let bad = |field| SpecError::NonPositive {
                index,
                name: s.name.clone(),
                field,
            };
            // Negated comparison so NaN fails validation too.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(s.freq_mhz > 0.0) {
                return Err(bad("freq_mhz"));
            }
            if s.cc_per_hash == 0 {
                return Err(bad("cc_per_hash"));
            }
            if s.pipeline_depth == 0 {
                return Err(bad("pipeline_depth"));
            }
            if s.replicas == 0 {
                return Err(bad("replicas"));
            }
        }
        Ok(())
    }

    /// Parses the TOML pipeline description used by spec files.
    pub fn from_toml_str(text: &str) -> Result<Self, SpecError> {
        let spec: PipelineSpec = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|span| text[..span.start].lines().count())
                .unwrap_or(0);
            SpecError::Parse(line, e.message().to_string())
        })?;
        spec.validate()?;
        Ok(spec)
    }

    /// Analytic throughput ceiling: the weakest stage's combined rate.
    pub fn chain_bound(&self) -> f64 {
        self.stages
            .iter()
            .map(|s| stage_throughput(s) * s.replicas as f64)
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip_through_json() {
        let text = r#"
            fifo_depth = 16

            [[stages]]
            name = "a"
            freq_mhz = 100.0
            cc_per_hash = 2

            [[stages]]
            name = "b"
            freq_mhz = 375.0
            cc_per_hash = 24
            pipeline_depth = 1
            replicas = 2
        "#;
        let spec = PipelineSpec::from_toml_str(text).unwrap();
        assert_eq!(spec.stages.len(), 2);
        assert_eq!(spec.stages[0].replicas, 1, "replica default");
        let json = serde_json::to_string(&spec).unwrap();
        let back: PipelineSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn parse_error_carries_line() {
        let text = "fifo_depth = 16\n[[stages]]\nname = \"a\"\nfreq_mhz = \"fast\"\n";
        match PipelineSpec::from_toml_str(text) {
            Err(SpecError::Parse(line, msg)) => {
                assert!(line >= 4, "line {line}: {msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn zero_fields_rejected() {
        let text = "fifo_depth = 4\n[[stages]]\nname = \"a\"\nfreq_mhz = 100.0\ncc_per_hash = 0\n";
        assert!(matches!(
            PipelineSpec::from_toml_str(text),
            Err(SpecError::NonPositive {
                field: "cc_per_hash",
                ..
            })
        ));
    }
}
