//! Mobile-agent walk execution: per-leg delay, payload growth, and energy.
//!
//! An agent's delay decomposes into the dispatch leg (sink to first source),
//! the roaming legs (source to source, each adding one per-source processing
//! delay), and the return leg (last source back to the sink). Every leg is
//! routed over minimum-hop paths and costs
//! `(ma_size / data_rate + control_delay) * hops`; the agent's size is its
//! processing code plus the payload collected so far.

use std::collections::BTreeMap;

use crate::deploy::NodeId;
use crate::error::Error;
use crate::geom::Point;
use crate::planner::{AgentKind, Itinerary, ItinerarySet};
use crate::topology::{hop_path, Topology};
use crate::Result;

/// Agent and traffic parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentParams {
    /// MA size at dispatch (`pc`), in bits. Includes the packet header; see
    /// [`AgentParams::header_included`].
    pub processing_code_bits: f64,
    /// Documents that `processing_code_bits` already covers the MA packet
    /// header, so no separate header term appears anywhere.
    pub header_included: bool,
    /// MAC-layer data rate in bits/second.
    pub data_rate_bps: f64,
    /// On-node data processing rate in bits/second.
    pub processing_rate_bps: f64,
    /// Time to mount the MA's processing code at a source, in seconds.
    pub access_delay_s: f64,
    /// Per-hop control-message delay, in seconds.
    pub control_delay_s: f64,
    /// Raw sensed data per source, in bits.
    pub raw_data_bits: f64,
    /// Fraction of the raw data removed by local reduction, in `[0, 1)`.
    /// With the default 0.8, each source contributes 20% of its raw bits.
    pub reduction_ratio: f64,
    /// Flips the reading of `reduction_ratio`: when true the ratio is the
    /// fraction *kept* rather than removed.
    pub reduction_means_kept: bool,
    /// Aggregation ratio `f` applied to the per-source contribution, in `(0, 1]`.
    pub aggregation_ratio: f64,
    /// Time to instantiate the cloned agent at the cloning point, in seconds.
    /// Zero-cost cloning is unphysical; one access delay is the smallest cost
    /// unit the model offers. Set to 0.0 to disable.
    pub clone_cost_s: f64,
}

impl Default for AgentParams {
    fn default() -> Self {
        AgentParams {
            processing_code_bits: 1024.0,
            header_included: true,
            data_rate_bps: 250_000.0,
            processing_rate_bps: 50_000_000.0,
            access_delay_s: 0.010,
            control_delay_s: 0.002,
            raw_data_bits: 2048.0,
            reduction_ratio: 0.8,
            reduction_means_kept: false,
            aggregation_ratio: 0.9,
            clone_cost_s: 0.010,
        }
    }
}

impl AgentParams {
    /// Checks the parameter invariants; non-finite values (NaN from text
    /// configs) are rejected along the way.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.processing_code_bits) {
            return Err("processing_code_bits must be > 0".into());
        }
        if !positive(self.data_rate_bps) {
            return Err("data_rate_bps must be > 0".into());
        }
        if !positive(self.processing_rate_bps) {
            return Err("processing_rate_bps must be > 0".into());
        }
        if !positive(self.access_delay_s) {
            return Err("access_delay_s must be > 0".into());
        }
        if !positive(self.control_delay_s) {
            return Err("control_delay_s must be > 0".into());
        }
        if !positive(self.raw_data_bits) {
            return Err("raw_data_bits must be > 0".into());
        }
        if !(0.0..1.0).contains(&self.reduction_ratio) {
            return Err("reduction_ratio must be in [0, 1)".into());
        }
        if !(self.aggregation_ratio > 0.0 && self.aggregation_ratio <= 1.0) {
            return Err("aggregation_ratio must be in (0, 1]".into());
        }
        if !(self.clone_cost_s.is_finite() && self.clone_cost_s >= 0.0) {
            return Err("clone_cost_s must be >= 0".into());
        }
        Ok(())
    }
}

/// First-order radio model constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    /// Electronics energy per bit, paid on both transmit and receive.
    pub elec_j_per_bit: f64,
    /// Amplifier energy per bit per square meter of hop distance.
    pub amp_j_per_bit_m2: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        EnergyParams {
            elec_j_per_bit: 50e-9,
            amp_j_per_bit_m2: 100e-12,
        }
    }
}

impl EnergyParams {
    pub fn validate(&self) -> std::result::Result<(), String> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.elec_j_per_bit) {
            return Err("elec_j_per_bit must be > 0".into());
        }
        if !positive(self.amp_j_per_bit_m2) {
            return Err("amp_j_per_bit_m2 must be > 0".into());
        }
        Ok(())
    }
}

/// Bits one visited source adds to the agent payload: the raw reading after
/// local reduction, scaled by the aggregation ratio.
pub fn payload_per_source(params: &AgentParams) -> f64 {
    let reduced = if params.reduction_means_kept {
        params.raw_data_bits * params.reduction_ratio
    } else {
        params.raw_data_bits * (1.0 - params.reduction_ratio)
    };
    reduced * params.aggregation_ratio
}

/// Aggregated payload after visiting `j` sources. The model is linear: each
/// source contributes the same post-reduction, post-aggregation amount. The
/// agent's total size at that point is `processing_code_bits + payload`.
pub fn payload_after(j: usize, params: &AgentParams) -> f64 {
    j as f64 * payload_per_source(params)
}

/// Migration delay of one leg: per hop, the agent transmission time at the
/// MAC data rate plus the control-message exchange.
pub fn leg_delay(ma_size_bits: f64, hops: usize, params: &AgentParams) -> f64 {
    (ma_size_bits / params.data_rate_bps + params.control_delay_s) * hops as f64
}

/// Delay spent at each visited source: mounting the agent's processing code
/// plus crunching the raw reading. Charged once per source; relay nodes only
/// forward and pay nothing here.
pub fn source_processing_delay(params: &AgentParams) -> f64 {
    params.access_delay_s + params.raw_data_bits / params.processing_rate_bps
}

/// Radio energy to move an agent of `ma_size_bits` along `path`: per hop,
/// transmit electronics plus distance-squared amplifier energy at the sender
/// and receive electronics at the receiver.
pub fn leg_energy(
    ma_size_bits: f64,
    path: &[NodeId],
    positions: &[Point],
    e: &EnergyParams,
) -> f64 {
    path.windows(2)
        .map(|w| {
            let d = positions[w[0]].distance(&positions[w[1]]);
            let tx = ma_size_bits * (e.elec_j_per_bit + e.amp_j_per_bit_m2 * d * d);
            let rx = ma_size_bits * e.elec_j_per_bit;
            tx + rx
        })
        .sum()
}

/// One inter-node migration in an agent trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub from: NodeId,
    pub to: NodeId,
    pub hops: usize,
    /// Agent size carried on this leg (processing code + payload so far).
    pub ma_size_bits: f64,
    pub leg_delay_s: f64,
    pub leg_energy_j: f64,
}

/// Complete migration record of one agent.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentTrace {
    pub agent_kind: AgentKind,
    pub clone_point: Option<NodeId>,
    pub legs: Vec<Leg>,
    /// Number of sources this agent collected from (each one charged a
    /// processing delay).
    pub sources_visited: usize,
    /// Wall-clock offset before this agent's own walk begins: zero except for
    /// cloned agents, which inherit their main agent's dispatch delay plus
    /// the cloning cost. Filled in by [`simulate_mission`].
    pub start_offset_s: f64,
    /// The agent's own walking time: leg delays plus per-source processing.
    pub total_delay_s: f64,
    /// Energy charged for the cloned agent's code over the dispatch hop
    /// sequence (zero for other kinds). A cloned agent's itinerary begins
    /// with the sink-to-cloning-point hop sequence, so its migration cost
    /// covers those hops at code size even though it rides along with the
    /// main agent in time.
    pub clone_dispatch_energy_j: f64,
    /// Radio energy over the walk legs plus any clone dispatch charge.
    pub total_energy_j: f64,
    pub delivered_payload_bits: f64,
}

impl AgentTrace {
    /// Wall-clock time at which this agent is back at the sink.
    pub fn completion_time_s(&self) -> f64 {
        self.start_offset_s + self.total_delay_s
    }
}

/// Aggregate of all agent traces for one data-gathering task.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionResult {
    pub traces: Vec<AgentTrace>,
    /// Latest completion time over all agents, clone offsets included.
    pub task_duration_s: f64,
    pub total_energy_j: f64,
    /// Total payload brought back to the sink. Computed from the linear
    /// payload model over all visited sources, so conservation is exact.
    pub delivered_bits: f64,
}

/// Walks one itinerary over the topology and accounts every leg.
///
/// Plain and main agents start at the sink; a cloned agent starts at its
/// cloning point carrying the processing code and an empty payload (the main
/// agent physically carried the clone's code out, so the shared dispatch leg
/// is never charged twice). Every agent returns to the sink, including a
/// cloned agent with no sources of its own.
pub fn simulate_agent(
    itinerary: &Itinerary,
    topology: &Topology,
    params: &AgentParams,
    energy: &EnergyParams,
) -> Result<AgentTrace> {
    let mut legs = Vec::with_capacity(itinerary.visit_order.len() + 1);
    let mut current = itinerary.start_anchor;
    let mut visited = 0usize;

    for &source in &itinerary.visit_order {
        legs.push(make_leg(
            current, source, visited, topology, params, energy,
        )?);
        visited += 1;
        current = source;
    }
    let needs_return = !itinerary.visit_order.is_empty() || itinerary.agent_kind == AgentKind::Cma;
    if needs_return {
        legs.push(make_leg(
            current,
            topology.sink_id,
            visited,
            topology,
            params,
            energy,
        )?);
    }

    // The cloned agent's itinerary starts with the sink-to-cloning-point hop
    // sequence; charge its code size over those hops. Time is not charged
    // here: the clone shares the main agent's dispatch clock, which
    // simulate_mission applies as the start offset.
    let clone_dispatch_energy_j = if itinerary.agent_kind == AgentKind::Cma {
        let dispatch_path = hop_path(topology, topology.sink_id, itinerary.start_anchor)?;
        leg_energy(
            params.processing_code_bits,
            &dispatch_path,
            &topology.positions,
            energy,
        )
    } else {
        0.0
    };

    let total_delay_s = legs.iter().map(|l| l.leg_delay_s).sum::<f64>()
        + visited as f64 * source_processing_delay(params);
    let total_energy_j = legs.iter().map(|l| l.leg_energy_j).sum::<f64>() + clone_dispatch_energy_j;
    Ok(AgentTrace {
        agent_kind: itinerary.agent_kind,
        clone_point: itinerary.clone_point,
        legs,
        sources_visited: visited,
        start_offset_s: 0.0,
        total_delay_s,
        clone_dispatch_energy_j,
        total_energy_j,
        delivered_payload_bits: payload_after(visited, params),
    })
}

fn make_leg(
    from: NodeId,
    to: NodeId,
    sources_collected: usize,
    topology: &Topology,
    params: &AgentParams,
    energy: &EnergyParams,
) -> Result<Leg> {
    let path = hop_path(topology, from, to)?;
    let hops = path.len() - 1;
    let ma_size_bits = params.processing_code_bits + payload_after(sources_collected, params);
    Ok(Leg {
        from,
        to,
        hops,
        ma_size_bits,
        leg_delay_s: leg_delay(ma_size_bits, hops, params),
        leg_energy_j: leg_energy(ma_size_bits, &path, &topology.positions, energy),
    })
}

/// Simulates every agent in the set and assembles the mission totals.
///
/// Cloned agents do not start at time zero: each one waits for its main
/// agent's dispatch leg (the shared sink-to-FSN migration) plus the cloning
/// cost, and that offset is recorded on the trace. The task duration is the
/// latest completion time over all agents.
pub fn simulate_mission(
    set: &ItinerarySet,
    topology: &Topology,
    params: &AgentParams,
    energy: &EnergyParams,
) -> Result<MissionResult> {
    let mut traces = Vec::with_capacity(set.itineraries.len());
    for itinerary in &set.itineraries {
        traces.push(simulate_agent(itinerary, topology, params, energy)?);
    }

    // Dispatch delay of each main agent, keyed by cloning point.
    let mut mma_dispatch: BTreeMap<NodeId, f64> = BTreeMap::new();
    for trace in &traces {
        if trace.agent_kind == AgentKind::Mma {
            let clone_point = trace.clone_point.ok_or_else(|| Error::InvalidItinerary {
                reason: "main agent without a clone point".into(),
            })?;
            let dispatch = trace.legs.first().map_or(0.0, |l| l.leg_delay_s);
            mma_dispatch.insert(clone_point, dispatch);
        }
    }
    for trace in &mut traces {
        if trace.agent_kind == AgentKind::Cma {
            let clone_point = trace.clone_point.ok_or_else(|| Error::InvalidItinerary {
                reason: "cloned agent without a clone point".into(),
            })?;
            let dispatch = mma_dispatch
                .get(&clone_point)
                .ok_or(Error::MissingMainAgent { clone_point })?;
            trace.start_offset_s = dispatch + params.clone_cost_s;
        }
    }

    let task_duration_s = traces
        .iter()
        .map(AgentTrace::completion_time_s)
        .fold(0.0, f64::max);
    let total_energy_j = traces.iter().map(|t| t.total_energy_j).sum();
    let total_visited: usize = traces.iter().map(|t| t.sources_visited).sum();
    Ok(MissionResult {
        traces,
        task_duration_s,
        total_energy_j,
        delivered_bits: payload_after(total_visited, params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deploy::Deployment;
    use crate::topology::build_topology;
    use approx::assert_relative_eq;

    fn table_params() -> AgentParams {
        AgentParams::default()
    }

    #[test]
    fn payload_grows_linearly_from_zero() {
        let p = table_params();
        assert_eq!(payload_after(0, &p), 0.0);
        assert_relative_eq!(payload_after(1, &p), 368.64, max_relative = 1e-12);
        assert_eq!(payload_after(10, &p), 10.0 * payload_after(1, &p));
    }

    #[test]
    fn reduction_flag_flips_the_kept_fraction() {
        let mut p = table_params();
        assert_relative_eq!(payload_per_source(&p), 368.64, max_relative = 1e-12);
        p.reduction_means_kept = true;
        assert_relative_eq!(
            payload_per_source(&p),
            2048.0 * 0.8 * 0.9,
            max_relative = 1e-12
        );
    }

    #[test]
    fn leg_delay_worked_example() {
        let p = table_params();
        assert_eq!(leg_delay(1024.0, 0, &p), 0.0);
        // 1024 bits at 250 kbps plus 2 ms control, over three hops.
        assert_relative_eq!(leg_delay(1024.0, 3, &p), 0.018288, max_relative = 1e-12);
        assert_eq!(leg_delay(1024.0, 6, &p), 2.0 * leg_delay(1024.0, 3, &p));
    }

    #[test]
    fn source_processing_delay_composes_access_and_crunch() {
        let p = table_params();
        assert_relative_eq!(
            source_processing_delay(&p),
            0.01004096,
            max_relative = 1e-12
        );

        let degenerate = AgentParams {
            access_delay_s: 0.0,
            processing_rate_bps: f64::INFINITY,
            ..table_params()
        };
        assert_eq!(source_processing_delay(&degenerate), 0.0);
    }

    #[test]
    fn leg_energy_worked_example() {
        let e = EnergyParams::default();
        let positions = vec![Point::new(0.0, 0.0), Point::new(50.0, 0.0)];
        assert_eq!(leg_energy(1024.0, &[0], &positions, &e), 0.0);
        let one_hop = leg_energy(1024.0, &[0, 1], &positions, &e);
        assert_relative_eq!(one_hop, 3.584e-4, max_relative = 1e-12);
        assert!(leg_energy(2048.0, &[0, 1], &positions, &e) > one_hop);
    }

    fn two_node_world() -> (Deployment, Topology) {
        let d = Deployment {
            positions: vec![Point::new(50.0, 0.0), Point::new(0.0, 0.0)],
            sink_id: 1,
            sources: vec![0],
        };
        let t = build_topology(&d, 60.0).unwrap();
        (d, t)
    }

    #[test]
    fn empty_plain_itinerary_is_a_no_op() {
        let (_, t) = two_node_world();
        let trace = simulate_agent(
            &Itinerary::plain(vec![], t.sink_id),
            &t,
            &table_params(),
            &EnergyParams::default(),
        )
        .unwrap();
        assert!(trace.legs.is_empty());
        assert_eq!(trace.total_delay_s, 0.0);
        assert_eq!(trace.total_energy_j, 0.0);
    }

    #[test]
    fn single_adjacent_source_composes_the_three_delay_terms() {
        let (_, t) = two_node_world();
        let p = table_params();
        let e = EnergyParams::default();
        let trace = simulate_agent(&Itinerary::plain(vec![0], t.sink_id), &t, &p, &e).unwrap();

        let pc = p.processing_code_bits;
        let expected =
            leg_delay(pc, 1, &p) + source_processing_delay(&p) + leg_delay(pc + 368.64, 1, &p);
        assert_relative_eq!(trace.total_delay_s, expected, max_relative = 1e-12);
        assert_eq!(trace.legs.len(), 2);
        assert_eq!(trace.sources_visited, 1);
        assert_relative_eq!(trace.delivered_payload_bits, 368.64, max_relative = 1e-12);
    }

    /// Parameters that make delay equal size-times-hops with unit growth:
    /// dispatch size 1, +1 per visit, no control or processing overhead.
    fn unit_params() -> AgentParams {
        AgentParams {
            processing_code_bits: 1.0,
            data_rate_bps: 1.0,
            processing_rate_bps: f64::INFINITY,
            access_delay_s: 0.0,
            control_delay_s: 0.0,
            raw_data_bits: 1.0,
            reduction_ratio: 0.0,
            aggregation_ratio: 1.0,
            clone_cost_s: 0.0,
            ..AgentParams::default()
        }
    }

    /// Four sources where the last one sits two hops from the sink while the
    /// first is adjacent to it: the shape that rewards reversal.
    fn hook_deployment() -> (Deployment, Topology) {
        let positions = vec![
            Point::new(50.0, 0.0),   // 0
            Point::new(50.0, 50.0),  // 1
            Point::new(50.0, 100.0), // 2
            Point::new(0.0, 100.0),  // 3
            Point::new(0.0, 50.0),   // 4: relay
            Point::new(0.0, 0.0),    // 5: sink
        ];
        let d = Deployment {
            sink_id: 5,
            positions,
            sources: vec![0, 1, 2, 3],
        };
        let t = build_topology(&d, 60.0).unwrap();
        (d, t)
    }

    #[test]
    fn unit_growth_walk_costs_20_forward_and_16_reversed() {
        let (_, t) = hook_deployment();
        let p = unit_params();
        let e = EnergyParams::default();

        let forward =
            simulate_agent(&Itinerary::plain(vec![0, 1, 2, 3], t.sink_id), &t, &p, &e).unwrap();
        assert_eq!(
            forward.legs.iter().map(|l| l.hops).collect::<Vec<_>>(),
            vec![1, 1, 1, 1, 2]
        );
        assert_eq!(forward.total_delay_s, 20.0);

        let reversed =
            simulate_agent(&Itinerary::plain(vec![3, 2, 1, 0], t.sink_id), &t, &p, &e).unwrap();
        assert_eq!(reversed.total_delay_s, 16.0);
    }

    #[test]
    fn ma_size_never_shrinks_along_a_walk() {
        let (_, t) = hook_deployment();
        let trace = simulate_agent(
            &Itinerary::plain(vec![0, 1, 2, 3], t.sink_id),
            &t,
            &table_params(),
            &EnergyParams::default(),
        )
        .unwrap();
        for pair in trace.legs.windows(2) {
            assert!(pair[1].ma_size_bits >= pair[0].ma_size_bits);
        }
    }

    #[test]
    fn mission_duration_is_the_max_completion_time() {
        let (_, t) = hook_deployment();
        let p = table_params();
        let e = EnergyParams::default();
        let set = ItinerarySet::new(vec![
            Itinerary::plain(vec![0], t.sink_id),
            Itinerary::plain(vec![1, 2], t.sink_id),
            Itinerary::plain(vec![3], t.sink_id),
        ]);
        let mission = simulate_mission(&set, &t, &p, &e).unwrap();
        let expected = set
            .itineraries
            .iter()
            .map(|it| simulate_agent(it, &t, &p, &e).unwrap().total_delay_s)
            .fold(0.0, f64::max);
        assert_eq!(mission.task_duration_s, expected);
    }

    #[test]
    fn clone_pair_offsets_the_cma_by_dispatch_and_clone_cost() {
        let (_, t) = hook_deployment();
        let p = table_params();
        let e = EnergyParams::default();
        let base = Itinerary::plain(vec![0, 1, 2, 3], t.sink_id);
        let (mma, cma) = crate::planner::split_at_fsn(&base, 2).unwrap();
        let set = ItinerarySet::new(vec![mma, cma]);
        let mission = simulate_mission(&set, &t, &p, &e).unwrap();

        let mma_trace = &mission.traces[0];
        let cma_trace = &mission.traces[1];
        assert_eq!(mma_trace.start_offset_s, 0.0);
        assert_relative_eq!(
            cma_trace.start_offset_s,
            mma_trace.legs[0].leg_delay_s + p.clone_cost_s,
            max_relative = 1e-12
        );
        assert_eq!(
            mission.task_duration_s,
            mma_trace
                .completion_time_s()
                .max(cma_trace.completion_time_s())
        );

        // The clone is charged for its code over the dispatch hops (same
        // path the main agent walked), but not for their time.
        assert_eq!(mma_trace.clone_dispatch_energy_j, 0.0);
        let dispatch_path = crate::topology::hop_path(&t, t.sink_id, 2).unwrap();
        assert_eq!(
            cma_trace.clone_dispatch_energy_j,
            leg_energy(p.processing_code_bits, &dispatch_path, &t.positions, &e)
        );
        assert_eq!(
            cma_trace.total_energy_j,
            cma_trace.legs.iter().map(|l| l.leg_energy_j).sum::<f64>()
                + cma_trace.clone_dispatch_energy_j
        );
    }

    #[test]
    fn degenerate_clone_with_no_sources_still_returns_home() {
        let (_, t) = hook_deployment();
        let p = table_params();
        let e = EnergyParams::default();
        let mma = Itinerary {
            agent_kind: AgentKind::Mma,
            visit_order: vec![2, 1, 0],
            start_anchor: t.sink_id,
            clone_point: Some(2),
        };
        let cma = Itinerary {
            agent_kind: AgentKind::Cma,
            visit_order: vec![],
            start_anchor: 2,
            clone_point: Some(2),
        };
        let set = ItinerarySet::new(vec![mma, cma]);
        let mission = simulate_mission(&set, &t, &p, &e).unwrap();
        let cma_trace = &mission.traces[1];
        assert_eq!(cma_trace.legs.len(), 1);
        assert_eq!(cma_trace.legs[0].from, 2);
        assert_eq!(cma_trace.legs[0].to, t.sink_id);
        assert_eq!(cma_trace.sources_visited, 0);
        assert!(cma_trace.start_offset_s > 0.0);
    }

    #[test]
    fn cma_without_its_mma_is_rejected() {
        let (_, t) = hook_deployment();
        let cma = Itinerary {
            agent_kind: AgentKind::Cma,
            visit_order: vec![1],
            start_anchor: 2,
            clone_point: Some(2),
        };
        let err = simulate_mission(
            &ItinerarySet::new(vec![cma]),
            &t,
            &table_params(),
            &EnergyParams::default(),
        )
        .unwrap_err();
        assert_eq!(err, Error::MissingMainAgent { clone_point: 2 });
    }
}
