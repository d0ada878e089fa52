//! The three headline measures of a data-gathering mission.

use crate::error::Error;
use crate::sim::{AgentTrace, MissionResult};
use crate::Result;

/// One measured cell of an experiment sweep; the CSV row schema of the
/// harness.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRow {
    pub planner: String,
    pub source_count: usize,
    pub aggregation_ratio: f64,
    pub seed: u64,
    pub task_duration_s: f64,
    pub throughput_bps: f64,
    pub energy_j: f64,
}

/// Task duration: the completion time of the last agent to reach the sink,
/// clone offsets included.
pub fn task_duration(mission: &MissionResult) -> Result<f64> {
    if mission.traces.is_empty() {
        return Err(Error::EmptyMission);
    }
    Ok(mission
        .traces
        .iter()
        .map(AgentTrace::completion_time_s)
        .fold(0.0, f64::max))
}

/// Event-to-sink throughput: total aggregated bits delivered to the sink
/// divided by the task duration.
pub fn event_to_sink_throughput(mission: &MissionResult) -> Result<f64> {
    let duration = task_duration(mission)?;
    if duration <= 0.0 {
        return Err(Error::ZeroDuration);
    }
    Ok(mission.delivered_bits / duration)
}

/// Total task energy: the accumulated energy spent by all distributed agents.
pub fn total_energy(mission: &MissionResult) -> f64 {
    mission.traces.iter().map(|t| t.total_energy_j).sum()
}
