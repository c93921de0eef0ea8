//! Analytic throughput figures and minimal replication planning.

use super::StageSpec;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Throughput of a single core in MHash/s: clock over initiation interval.
pub fn stage_throughput(stage: &StageSpec) -> f64 {
    stage.freq_mhz / stage.cc_per_hash as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StagePlan {
    pub name: String,
    /// One core's throughput, MHash/s.
    pub individual: f64,
    /// Minimal replicas meeting the target.
    pub replicas: u32,
    /// Replicas × individual, MHash/s.
    pub combined: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanResult {
    pub target: f64,
    pub per_stage: Vec<StagePlan>,
    /// min over stages of the planned combined throughput.
    pub chain_bound: f64,
}

impl PlanResult {
    pub fn replica_counts(&self) -> Vec<u32> {
        self.per_stage.iter().map(|s| s.replicas).collect()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("target throughput must be positive, got {0}")]
    BadTarget(f64),
}

/// For each stage, the minimal replica count whose combined throughput
/// reaches `target` MHash/s, plus the resulting chain bound.
pub fn plan_replication(stages: &[StageSpec], target: f64) -> Result<PlanResult, PlanError> {
    // Negated comparison so NaN fails validation too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(target > 0.0) {
        return Err(PlanError::BadTarget(target));
    }
    let per_stage: Vec<StagePlan> = stages
        .iter()
        .map(|s| {
            let individual = stage_throughput(s);
            let replicas = (target / individual).ceil().max(1.0) as u32;
            StagePlan {
                name: s.name.clone(),
                individual,
                replicas,
                combined: individual * replicas as f64,
            }
        })
        .collect();
    let chain_bound = per_stage
        .iter()
        .map(|s| s.combined)
        .fold(f64::INFINITY, f64::min);
    Ok(PlanResult {
        target,
        per_stage,
        chain_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stage(name: &str, freq: f64, cc: u32) -> StageSpec {
        StageSpec {
            name: name.into(),
            freq_mhz: freq,
            cc_per_hash: cc,
            pipeline_depth: 1,
            replicas: 1,
        }
    }

    #[test]
    fn unit_latency_is_identity() {
        for f in [1.0, 100.0, 375.25] {
            assert_eq!(stage_throughput(&stage("x", f, 1)), f);
        }
    }

    #[test]
    fn keccak_and_lyra2_figures() {
        let t = stage_throughput(&stage("keccak", 375.0, 24));
        assert!((t - 15.63).abs() < 0.01);
        let t = stage_throughput(&stage("lyra2", 225.0, 68));
        assert!((t - 3.31).abs() < 0.01);
    }

    #[test]
    fn low_target_needs_single_cores() {
        let stages = vec![stage("a", 100.0, 2), stage("b", 375.0, 24)];
        let plan = plan_replication(&stages, 10.0).unwrap();
        assert_eq!(plan.replica_counts(), vec![1, 1]);
    }

    #[test]
    fn planner_minimality() {
        let stages = vec![
            stage("blake", 100.0, 2),
            stage("keccak", 375.0, 24),
            stage("cubehash", 250.0, 192),
            stage("lyra2", 225.0, 68),
            stage("skein", 375.0, 9),
            stage("bmw", 100.0, 2),
        ];
        let target = 31.25;
        let plan = plan_replication(&stages, target).unwrap();
        for (s, p) in stages.iter().zip(&plan.per_stage) {
            assert!(p.combined >= target - 1e-9, "{} meets target", s.name);
            if p.replicas > 1 {
                let reduced = stage_throughput(s) * (p.replicas - 1) as f64;
                assert!(reduced < target, "{} replicas are minimal", s.name);
            }
        }
    }

    #[test]
    fn rejects_bad_target() {
        assert_eq!(
            plan_replication(&[stage("a", 1.0, 1)], 0.0),
            Err(PlanError::BadTarget(0.0))
        );
    }
}
