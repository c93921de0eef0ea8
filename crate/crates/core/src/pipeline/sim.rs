//! Deterministic discrete-event simulation of the pipeline.
//!
//! Model: an infinite job source feeds stage 0; each stage has a strict
//! round-robin scheduler over its replicas. A replica accepts a job when
//! its initiation interval has elapsed and it has a free pipeline slot; the
//! job completes one pipeline latency (initiation interval × depth) later
//! and is pushed downstream as soon as the bounded FIFO has room, holding
//! its pipeline slot until then. A full downstream FIFO therefore stalls
//! completed hashes inside the cores and, once the slots run out, stops the
//! scheduler — the back-pressure contract of the hardware FIFOs without
//! convoy artifacts from sampling instantaneous occupancy at dispatch time.
//! Clock domains are real-valued event times in microseconds; ties resolve
//! by schedule order, so runs are reproducible.

use super::{PipelineSpec, StageSpec};
use serde::{Deserialize, Serialize};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageStats {
    pub name: String,
    pub replicas: u32,
    /// Issue-slot occupancy inside the measurement window, 0..=1.
    pub utilization: f64,
    /// Jobs dispatched over the whole run.
    pub dispatched: u64,
    /// Jobs pushed downstream over the whole run.
    pub pushed: u64,
    /// Jobs still inside the stage when the horizon was reached.
    pub in_flight_end: u64,
    /// Occupancy of this stage's upstream FIFO at the horizon (0 for the
    /// source-fed first stage).
    pub upstream_fifo_end: u64,
    /// Whole-run dispatch count per replica, in replica order.
    pub per_replica_dispatched: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    /// Steady-state throughput over the post-warm-up window, MHash/s.
    pub steady_throughput: f64,
    /// Analytic ceiling (min combined stage throughput), MHash/s.
    pub analytic_bound: f64,
    pub bottleneck: String,
    pub per_stage: Vec<StageStats>,
    /// Jobs that left the pipeline over the whole run.
    pub sink_total: u64,
    pub horizon_us: f64,
    pub warmup_us: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("{0}")]
    BadSpec(#[from] super::SpecError),
    #[error("pipeline deadlocked at t = {at_us} us (no further progress possible)")]
    Deadlock { at_us: f64 },
    #[error("horizon {horizon_us} us does not clear the {warmup_us} us warm-up window")]
    HorizonTooShort { horizon_us: f64, warmup_us: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Event {
    Dispatch { stage: usize },
    Complete { stage: usize, replica: usize },
}

#[derive(PartialEq)]
struct Scheduled {
    t: f64,
    seq: u64,
    event: Event,
}

impl Eq for Scheduled {}

impl PartialOrd for Scheduled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scheduled {
    fn cmp(&self, other: &Self) -> Ordering {
        self.t
            .total_cmp(&other.t)
            .then_with(|| self.seq.cmp(&other.seq))
    }
}

struct Replica {
    next_issue: f64,
    in_flight: u64,
    ready: u64,
    dispatched: u64,
}

struct Stage {
    ii_us: f64,
    latency_us: f64,
    depth: u64,
    replicas: Vec<Replica>,
    rr_dispatch: usize,
    rr_push: usize,
    dispatched: u64,
    pushed: u64,
    dispatched_in_window: u64,
}

impl Stage {
    fn new(spec: &StageSpec) -> Self {
        let ii_us = spec.cc_per_hash as f64 / spec.freq_mhz;
        Stage {
            ii_us,
            latency_us: ii_us * spec.pipeline_depth as f64,
            depth: spec.pipeline_depth as u64,
            replicas: (0..spec.replicas)
                .map(|_| Replica {
                    next_issue: 0.0,
                    in_flight: 0,
                    ready: 0,
                    dispatched: 0,
                })
                .collect(),
            rr_dispatch: 0,
            rr_push: 0,
            dispatched: 0,
            pushed: 0,
            dispatched_in_window: 0,
        }
    }
}

struct Sim<'a> {
    spec: &'a PipelineSpec,
    stages: Vec<Stage>,
    /// fifo[i] feeds stage i; fifo[0] is unused (infinite source).
    fifo: Vec<u64>,
    sink_total: u64,
    heap: BinaryHeap<Reverse<Scheduled>>,
    seq: u64,
    warmup: f64,
    horizon: f64,
}

impl<'a> Sim<'a> {
    fn schedule(&mut self, t: f64, event: Event) {
        self.seq += 1;
        self.heap.push(Reverse(Scheduled {
            t,
            seq: self.seq,
            event,
        }));
    }

    fn upstream_available(&self, stage: usize) -> bool {
        stage == 0 || self.fifo[stage] > 0
    }

    fn downstream_has_room(&self, stage: usize) -> bool {
        stage + 1 >= self.stages.len() || self.fifo[stage + 1] < self.spec.fifo_depth as u64
    }

    /// Pushes as many ready outputs of `stage` as the downstream FIFO
    /// accepts. Returns true if anything moved.
    fn drain_ready(&mut self, stage: usize, t: f64) -> bool {
        let n = self.stages[stage].replicas.len();
        let mut moved = false;
        loop {
            if !self.downstream_has_room(stage) {
                break;
            }
            let mut pushed_one = false;
            for probe in 0..n {
                let idx = (self.stages[stage].rr_push + probe) % n;
                if self.stages[stage].replicas[idx].ready > 0 {
                    let st = &mut self.stages[stage];
                    st.replicas[idx].ready -= 1;
                    st.replicas[idx].in_flight -= 1;
                    st.pushed += 1;
                    st.rr_push = (idx + 1) % n;
                    if stage + 1 < self.stages.len() {
                        self.fifo[stage + 1] += 1;
                        self.schedule(t, Event::Dispatch { stage: stage + 1 });
                    } else {
                        self.sink_total += 1;
                    }
                    // A slot freed here may unblock our own scheduler.
                    self.schedule(t, Event::Dispatch { stage });
                    pushed_one = true;
                    moved = true;
                    break;
                }
            }
            if !pushed_one {
                break;
            }
        }
        moved
    }

    fn try_dispatch(&mut self, stage: usize, t: f64) {
        loop {
            if !self.upstream_available(stage) {
                return;
            }
            let n = self.stages[stage].replicas.len();
            let idx = self.stages[stage].rr_dispatch % n;
            let (ii, latency, depth) = {
                let st = &self.stages[stage];
                (st.ii_us, st.latency_us, st.depth)
            };
            let replica = &self.stages[stage].replicas[idx];
            if replica.in_flight >= depth {
                return; // wait for a completion or a push
            }
            if replica.next_issue > t {
                let at = replica.next_issue;
                self.schedule(at, Event::Dispatch { stage });
                return;
            }
            // Dispatch to the round-robin replica.
            {
                let st = &mut self.stages[stage];
                let r = &mut st.replicas[idx];
                r.in_flight += 1;
                r.dispatched += 1;
                r.next_issue = t + ii;
                st.rr_dispatch = (idx + 1) % n;
                st.dispatched += 1;
                if t >= self.warmup && t < self.horizon {
                    st.dispatched_in_window += 1;
                }
            }
            self.schedule(
                t + latency,
                Event::Complete {
                    stage,
                    replica: idx,
                },
            );
            if stage > 0 {
                self.fifo[stage] -= 1;
                // Space freed upstream: let the previous stage push and refill.
                self.schedule(t, Event::Dispatch { stage: stage - 1 });
                self.drain_ready(stage - 1, t);
            }
        }
    }
}

/// Runs the event loop until `horizon_us` and reports steady-state figures
/// measured after the warm-up window (the larger of 10% of the horizon and
/// 100 slowest-stage hash periods).
pub fn simulate(spec: &PipelineSpec, horizon_us: f64) -> Result<SimReport, SimError> {
    spec.validate()?;
    let slowest_period = spec
        .stages
        .iter()
        .map(|s| s.cc_per_hash as f64 / s.freq_mhz)
        .fold(0.0, f64::max);
    let warmup = (0.1 * horizon_us).max(100.0 * slowest_period);
    if horizon_us <= warmup {
        return Err(SimError::HorizonTooShort {
            horizon_us,
            warmup_us: warmup,
        });
    }

    let mut sim = Sim {
        spec,
        stages: spec.stages.iter().map(Stage::new).collect(),
        fifo: vec![0; spec.stages.len()],
        sink_total: 0,
        heap: BinaryHeap::new(),
        seq: 0,
        warmup,
        horizon: horizon_us,
    };

    for stage in 0..sim.stages.len() {
        sim.schedule(0.0, Event::Dispatch { stage });
    }

    let mut now = 0.0f64;
    let mut sink_at_warmup = 0u64;
    let mut warmup_recorded = false;

    while let Some(Reverse(next)) = sim.heap.pop() {
        if next.t > horizon_us {
            break;
        }
        now = next.t;
        if !warmup_recorded && now >= warmup {
            sink_at_warmup = sim.sink_total;
            warmup_recorded = true;
        }
        match next.event {
            Event::Dispatch { stage } => sim.try_dispatch(stage, now),
            Event::Complete { stage, replica } => {
                sim.stages[stage].replicas[replica].ready += 1;
                sim.drain_ready(stage, now);
            }
        }
    }

    if !warmup_recorded {
        // The event queue ran dry before the warm-up window ended: nothing
        // can ever move (e.g. zero-depth FIFOs).
        return Err(SimError::Deadlock { at_us: now });
    }

    let window = horizon_us - warmup;
    let steady = (sim.sink_total - sink_at_warmup) as f64 / window;

    let per_stage: Vec<StageStats> = spec
        .stages
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let st = &sim.stages[i];
            let busy = st.dispatched_in_window as f64 * st.ii_us;
            StageStats {
                name: s.name.clone(),
                replicas: s.replicas,
                utilization: (busy / (s.replicas as f64 * window)).min(1.0),
                dispatched: st.dispatched,
                pushed: st.pushed,
                in_flight_end: st.replicas.iter().map(|r| r.in_flight).sum(),
                upstream_fifo_end: sim.fifo[i],
                per_replica_dispatched: st.replicas.iter().map(|r| r.dispatched).collect(),
            }
        })
        .collect();

    let bottleneck = per_stage
        .iter()
        .max_by(|a, b| a.utilization.total_cmp(&b.utilization))
        .map(|s| s.name.clone())
        .unwrap_or_default();

    Ok(SimReport {
        steady_throughput: steady,
        analytic_bound: spec.chain_bound(),
        bottleneck,
        per_stage,
        sink_total: sim.sink_total,
        horizon_us,
        warmup_us: warmup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stage(name: &str, freq: f64, cc: u32, depth: u32, replicas: u32) -> StageSpec {
        StageSpec {
            name: name.into(),
            freq_mhz: freq,
            cc_per_hash: cc,
            pipeline_depth: depth,
            replicas,
        }
    }

    fn check_conservation(report: &SimReport) {
        for (i, s) in report.per_stage.iter().enumerate() {
            assert_eq!(
                s.dispatched,
                s.pushed + s.in_flight_end,
                "stage {i} conserves jobs"
            );
            if i + 1 < report.per_stage.len() {
                let next = &report.per_stage[i + 1];
                assert_eq!(
                    s.pushed,
                    next.dispatched + next.upstream_fifo_end,
                    "link {i} conserves jobs"
                );
            } else {
                assert_eq!(s.pushed, report.sink_total);
            }
        }
    }

    #[test]
    fn single_stage_matches_analytic_rate() {
        let spec = PipelineSpec {
            fifo_depth: 8,
            stages: vec![stage("only", 200.0, 4, 1, 1)],
        };
        let report = simulate(&spec, 2000.0).unwrap();
        let expect = 50.0;
        assert!(
            (report.steady_throughput - expect).abs() / expect < 0.01,
            "got {}",
            report.steady_throughput
        );
        check_conservation(&report);
    }

    #[test]
    fn downstream_half_rate_limits_and_shows_in_utilization() {
        let spec = PipelineSpec {
            fifo_depth: 8,
            stages: vec![stage("up", 100.0, 1, 1, 1), stage("down", 50.0, 1, 1, 1)],
        };
        let report = simulate(&spec, 2000.0).unwrap();
        assert!((report.steady_throughput - 50.0).abs() / 50.0 < 0.01);
        assert_eq!(report.bottleneck, "down");
        let up = &report.per_stage[0];
        assert!((up.utilization - 0.5).abs() < 0.05, "upstream at half load");
        let down = &report.per_stage[1];
        assert!(down.utilization > 0.95);
        check_conservation(&report);
    }

    #[test]
    fn never_exceeds_analytic_bound() {
        let spec = PipelineSpec {
            fifo_depth: 4,
            stages: vec![
                stage("a", 123.0, 7, 2, 2),
                stage("b", 77.0, 3, 1, 1),
                stage("c", 250.0, 192, 1, 24),
            ],
        };
        let report = simulate(&spec, 4000.0).unwrap();
        assert!(report.steady_throughput <= report.analytic_bound * (1.0 + 1e-9));
        check_conservation(&report);
    }

    #[test]
    fn zero_fifo_depth_deadlocks_cleanly() {
        let spec = PipelineSpec {
            fifo_depth: 0,
            stages: vec![stage("up", 100.0, 1, 1, 1), stage("down", 50.0, 1, 1, 1)],
        };
        match simulate(&spec, 1000.0) {
            Err(SimError::Deadlock { .. }) => {}
            other => panic!("expected deadlock, got {other:?}"),
        }
    }

    #[test]
    fn round_robin_fairness_across_replicas() {
        // 3 replicas, unconstrained downstream: dispatch counts per replica
        // differ by at most one at any cut, so totals split evenly.
        let spec = PipelineSpec {
            fifo_depth: 16,
            stages: vec![stage("a", 90.0, 3, 1, 3)],
        };
        let report = simulate(&spec, 1000.0).unwrap();
        let counts = &report.per_stage[0].per_replica_dispatched;
        assert_eq!(counts.len(), 3);
        let max = *counts.iter().max().unwrap();
        let min = *counts.iter().min().unwrap();
        assert!(max - min <= 1, "strict rotation, got {counts:?}");
        assert_eq!(counts.iter().sum::<u64>(), report.per_stage[0].dispatched);
        check_conservation(&report);
    }

    #[test]
    fn deep_fifos_reach_the_analytic_bound() {
        // FIFO depth at least twice the largest pipeline depth: simulated
        // steady state matches the analytic bound within 1%.
        let stages = vec![
            stage("a", 100.0, 10, 4, 1),
            stage("b", 50.0, 10, 2, 1),
            stage("c", 400.0, 10, 1, 1),
        ];
        let spec = PipelineSpec {
            fifo_depth: 8,
            stages,
        };
        let report = simulate(&spec, 5000.0).unwrap();
        let bound = spec.chain_bound();
        assert!((bound - 5.0).abs() < 1e-12);
        assert!(
            (report.steady_throughput - bound).abs() / bound < 0.01,
            "steady {} vs bound {bound}",
            report.steady_throughput
        );
        check_conservation(&report);
    }

    #[test]
    fn short_horizon_is_rejected() {
        let spec = PipelineSpec {
            fifo_depth: 4,
            stages: vec![stage("slow", 1.0, 100, 1, 1)],
        };
        // Slowest period = 100 us, warm-up needs 10 000 us.
        assert!(matches!(
            simulate(&spec, 5000.0),
            Err(SimError::HorizonTooShort { .. })
        ));
    }
}
