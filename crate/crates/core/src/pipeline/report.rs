//! Text rendering of plans and simulation reports. The machine-readable
//! form is plain serde on [`PlanResult`] and [`SimReport`].

use super::plan::PlanResult;
use super::sim::SimReport;
use super::PipelineSpec;
use std::fmt::Write;

/// Two-decimal display with ties rounding away from zero, so 15.625 prints
/// as 15.63 like the reference figures.
fn fmt2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Aligned table with one column per stage: frequency-independent figures
/// come from the plan input, so rows mirror the core metrics (individual
/// throughput, replicas, combined throughput).
pub fn plan_table(spec: &[super::StageSpec], plan: &PlanResult) -> String {
    let mut out = String::new();
    let name_w = plan
        .per_stage
        .iter()
        .map(|s| s.name.len())
        .max()
        .unwrap_or(5)
        .max("stage".len());
    let _ = writeln!(
        out,
        "{:<name_w$}  {:>10}  {:>9}  {:>8}  {:>8}  {:>10}",
        "stage", "freq(MHz)", "cc/hash", "T/P", "cores", "combined"
    );
    for (s, p) in spec.iter().zip(&plan.per_stage) {
        let _ = writeln!(
            out,
            "{:<name_w$}  {:>10.2}  {:>9}  {:>8.2}  {:>8}  {:>10.2}",
            p.name,
            s.freq_mhz,
            s.cc_per_hash,
            fmt2(p.individual),
            p.replicas,
            fmt2(p.combined)
        );
    }
    let _ = writeln!(
        out,
        "target {:.2} MHash/s; chain bound {:.2} MHash/s",
        fmt2(plan.target),
        fmt2(plan.chain_bound)
    );
    out
}

/// Aligned per-stage summary of a simulation run.
pub fn sim_table(spec: &PipelineSpec, report: &SimReport) -> String {
    let mut out = String::new();
    let name_w = report
        .per_stage
        .iter()
        .map(|s| s.name.len())
        .max()
        .unwrap_or(5)
        .max("stage".len());
    let _ = writeln!(
        out,
        "{:<name_w$}  {:>8}  {:>12}  {:>12}  {:>6}",
        "stage", "cores", "dispatched", "pushed", "util"
    );
    for s in &report.per_stage {
        let _ = writeln!(
            out,
            "{:<name_w$}  {:>8}  {:>12}  {:>12}  {:>5.1}%",
            s.name,
            s.replicas,
            s.dispatched,
            s.pushed,
            s.utilization * 100.0
        );
    }
    let _ = writeln!(
        out,
        "steady throughput {:.3} MHash/s (analytic bound {:.3}); bottleneck: {}; fifo depth {}; horizon {:.0} us (warm-up {:.0} us)",
        report.steady_throughput,
        report.analytic_bound,
        report.bottleneck,
        spec.fifo_depth,
        report.horizon_us,
        report.warmup_us
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{plan_replication, StageSpec};

    #[test]
    fn empty_plan_renders_without_panicking() {
        let plan = plan_replication(&[], 1.0).unwrap();
        let table = plan_table(&[], &plan);
        assert!(table.contains("stage"));
        assert!(table.contains("chain bound"));
    }

    #[test]
    fn plan_table_lists_each_stage() {
        let stages = vec![StageSpec {
            name: "keccak256".into(),
            freq_mhz: 375.0,
            cc_per_hash: 24,
            pipeline_depth: 1,
            replicas: 1,
        }];
        let plan = plan_replication(&stages, 31.25).unwrap();
        let table = plan_table(&stages, &plan);
        assert!(table.contains("keccak256"));
        assert!(table.contains("15.63"));
    }
}
