//! Itinerary construction: visiting orders and agent assignment.
//!
//! All three planners share the same building blocks. Local-closest-first
//! (LCF) greedily orders a source set by Euclidean distance from a starting
//! point. CMIP additionally reverses itineraries so the agent collects from
//! the far end of its route first, and splits an itinerary at the farthest
//! source node (FSN) into a main agent / cloned agent pair that work the two
//! halves concurrently.

mod kmeans;

pub use kmeans::{kmeans_partition, Partition};

use std::collections::BTreeSet;

use crate::deploy::{Deployment, NodeId};
use crate::error::Error;
use crate::geom::{farthest_source_node, Point};
use crate::topology::Topology;
use crate::Result;

/// Role of the agent that will execute an itinerary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentKind {
    /// Main mobile agent: dispatched from the sink, clones itself at the FSN.
    Mma,
    /// Cloned mobile agent: comes to life at the FSN and covers the suffix.
    Cma,
    /// Ordinary agent with no cloning involved.
    Plain,
}

/// One agent's ordered source-visiting sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Itinerary {
    pub agent_kind: AgentKind,
    /// Sources in visiting order; duplicate-free.
    pub visit_order: Vec<NodeId>,
    /// Where the walk starts: the sink for `Plain`/`Mma`, the FSN for `Cma`.
    pub start_anchor: NodeId,
    /// The FSN where cloning occurs; present on both halves of a clone pair.
    pub clone_point: Option<NodeId>,
}

impl Itinerary {
    pub fn plain(visit_order: Vec<NodeId>, sink_id: NodeId) -> Self {
        Itinerary {
            agent_kind: AgentKind::Plain,
            visit_order,
            start_anchor: sink_id,
            clone_point: None,
        }
    }
}

/// A planner's full output: the per-agent itineraries plus the source set
/// they collectively cover. The visit orders always partition
/// `covered_sources` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ItinerarySet {
    pub itineraries: Vec<Itinerary>,
    pub covered_sources: BTreeSet<NodeId>,
}

impl ItinerarySet {
    pub fn new(itineraries: Vec<Itinerary>) -> Self {
        let covered_sources = itineraries
            .iter()
            .flat_map(|i| i.visit_order.iter().copied())
            .collect();
        ItinerarySet {
            itineraries,
            covered_sources,
        }
    }

    /// True when the visit orders are pairwise disjoint and cover
    /// `covered_sources` exactly.
    pub fn is_exact_partition(&self) -> bool {
        let mut seen = BTreeSet::new();
        for itinerary in &self.itineraries {
            for &s in &itinerary.visit_order {
                if !seen.insert(s) {
                    return false;
                }
            }
        }
        seen == self.covered_sources
    }
}

/// Local-closest-first ordering: repeatedly visit the nearest unvisited
/// source, starting from `start`. Distance ties break to the lowest node id.
pub fn lcf_order(sources: &[NodeId], start: Point, positions: &[Point]) -> Vec<NodeId> {
    let mut unvisited: Vec<NodeId> = sources.to_vec();
    unvisited.sort_unstable();
    let mut order = Vec::with_capacity(unvisited.len());
    let mut current = start;
    while !unvisited.is_empty() {
        let mut best = 0;
        let mut best_dist = positions[unvisited[0]].distance(&current);
        for (i, &s) in unvisited.iter().enumerate().skip(1) {
            let d = positions[s].distance(&current);
            // Strictly-less keeps the lowest id on ties: the list is sorted.
            if d < best_dist {
                best = i;
                best_dist = d;
            }
        }
        let next = unvisited.remove(best);
        current = positions[next];
        order.push(next);
    }
    order
}

/// Reverses the visiting order so the farthest-planned source is visited
/// first; every other field is preserved.
pub fn reverse_itinerary(itinerary: &Itinerary) -> Itinerary {
    let mut reversed = itinerary.clone();
    reversed.visit_order.reverse();
    reversed
}

/// Splits an itinerary at the farthest source node into a clone pair.
///
/// The main agent takes the prefix up to and including `fsn`, reversed so its
/// walk starts at the FSN and heads back toward the sink-nearest sources. The
/// cloned agent takes the unchanged suffix and starts at the FSN. When the
/// FSN is already last there is nothing to split; callers take the
/// reverse-only branch instead.
pub fn split_at_fsn(itinerary: &Itinerary, fsn: NodeId) -> Result<(Itinerary, Itinerary)> {
    let pos = itinerary
        .visit_order
        .iter()
        .position(|&s| s == fsn)
        .ok_or(Error::FsnNotInItinerary { fsn })?;
    if pos + 1 == itinerary.visit_order.len() {
        return Err(Error::NoSplitNeeded { fsn });
    }
    let mut mma_order: Vec<NodeId> = itinerary.visit_order[..=pos].to_vec();
    mma_order.reverse();
    let mma = Itinerary {
        agent_kind: AgentKind::Mma,
        visit_order: mma_order,
        start_anchor: itinerary.start_anchor,
        clone_point: Some(fsn),
    };
    let cma = Itinerary {
        agent_kind: AgentKind::Cma,
        visit_order: itinerary.visit_order[pos + 1..].to_vec(),
        start_anchor: fsn,
        clone_point: Some(fsn),
    };
    Ok((mma, cma))
}

/// Size-weighted hop cost of an itinerary under unit payload growth: the
/// agent has size 1 on its first leg and grows by 1 after every visit, so leg
/// `i` (zero-based) costs `(1 + i) * hops[i]`. This is the abstract migration
/// cost that motivates reversing LCF itineraries.
pub fn unit_growth_cost(leg_hops: &[usize]) -> usize {
    leg_hops.iter().enumerate().map(|(i, &h)| (1 + i) * h).sum()
}

/// Cuts an LCF order into consecutive segments such that no agent's projected
/// payload (`sources * per_source_bits`) exceeds `ma_dpt_bits`. Every agent
/// carries at least one source.
fn payload_segments(order: &[NodeId], ma_dpt_bits: f64, per_source_bits: f64) -> Vec<Vec<NodeId>> {
    let mut segments = Vec::new();
    let mut current: Vec<NodeId> = Vec::new();
    for &s in order {
        let projected = (current.len() + 1) as f64 * per_source_bits;
        if !current.is_empty() && projected > ma_dpt_bits {
            segments.push(std::mem::take(&mut current));
        }
        current.push(s);
    }
    if !current.is_empty() {
        segments.push(current);
    }
    segments
}

fn check_payload_threshold(ma_dpt_bits: f64, per_source_bits: f64) -> Result<()> {
    let per_ok = per_source_bits.is_finite() && per_source_bits > 0.0;
    if !per_ok || ma_dpt_bits < per_source_bits {
        return Err(Error::PayloadThresholdTooSmall {
            ma_dpt_bits,
            per_source_bits,
        });
    }
    Ok(())
}

/// The clone-based planner.
///
/// Sources are partitioned with k-means; inside each partition the LCF order
/// is cut into payload-bounded agents exactly as GIGM-MIP would cut it. Each
/// agent's itinerary is then examined: if its FSN is not the last planned
/// visit, the itinerary is split at the FSN into a main/cloned pair; if the
/// FSN is already last, the whole itinerary is reversed and a single agent
/// runs it.
pub fn plan_cmip(
    deployment: &Deployment,
    topology: &Topology,
    k: usize,
    ma_dpt_bits: f64,
    per_source_bits: f64,
    rng_seed: u64,
) -> Result<ItinerarySet> {
    check_payload_threshold(ma_dpt_bits, per_source_bits)?;
    let sink = topology.positions[topology.sink_id];
    let partitions = kmeans_partition(&deployment.sources, k, &topology.positions, rng_seed)?;
    let mut itineraries = Vec::new();
    for partition in &partitions {
        let order = lcf_order(&partition.members, sink, &topology.positions);
        for segment in payload_segments(&order, ma_dpt_bits, per_source_bits) {
            let fsn = farthest_source_node(&segment, &topology.positions, sink)?;
            let base = Itinerary::plain(segment, topology.sink_id);
            if *base.visit_order.last().expect("segments are non-empty") == fsn {
                itineraries.push(Itinerary {
                    agent_kind: AgentKind::Plain,
                    ..reverse_itinerary(&base)
                });
            } else {
                let (mma, cma) = split_at_fsn(&base, fsn)?;
                itineraries.push(mma);
                itineraries.push(cma);
            }
        }
    }
    Ok(ItinerarySet::new(itineraries))
}

/// Impact one source exerts on another in CL-MIP's accumulation step:
/// maximal at zero distance and decaying smoothly on the scale of the
/// transmission range. Any monotone-decreasing kernel fits the scheme; this
/// one is isolated here so it can be swapped in one place.
fn clmip_impact(distance_m: f64, transmission_range_m: f64) -> f64 {
    (-distance_m / transmission_range_m).exp()
}

/// The central-location baseline.
///
/// Repeatedly: every remaining source accumulates impact factors from all
/// remaining sources (itself included); the highest accumulation becomes the
/// visiting central location (VCL); every remaining source within
/// `vcl_radius_m` of it forms one group. Each group gets a plain LCF
/// itinerary from the sink, with no reversal and no cloning.
pub fn plan_clmip(
    deployment: &Deployment,
    topology: &Topology,
    vcl_radius_m: f64,
) -> Result<ItinerarySet> {
    if deployment.sources.is_empty() {
        return Err(Error::EmptySources);
    }
    let positions = &topology.positions;
    let sink = positions[topology.sink_id];
    let mut remaining: Vec<NodeId> = deployment.sources.clone();
    remaining.sort_unstable();
    let mut itineraries = Vec::new();
    while !remaining.is_empty() {
        let mut vcl = remaining[0];
        let mut best = f64::NEG_INFINITY;
        for &j in &remaining {
            let acc: f64 = remaining
                .iter()
                .map(|&i| {
                    clmip_impact(
                        positions[i].distance(&positions[j]),
                        topology.transmission_range_m,
                    )
                })
                .sum();
            if acc > best {
                best = acc;
                vcl = j;
            }
        }
        let (group, rest): (Vec<NodeId>, Vec<NodeId>) = remaining
            .into_iter()
            .partition(|&s| positions[s].distance(&positions[vcl]) <= vcl_radius_m);
        remaining = rest;
        let order = lcf_order(&group, sink, positions);
        itineraries.push(Itinerary::plain(order, topology.sink_id));
    }
    Ok(ItinerarySet::new(itineraries))
}

/// The payload-balancing baseline.
///
/// Sources are partitioned with k-means; each partition's LCF order is walked
/// assigning consecutive sources to the current agent until the next source
/// would push its projected payload past `ma_dpt_bits`, at which point a new
/// agent opens. Segments stay in LCF order, unreversed.
pub fn plan_gigm(
    deployment: &Deployment,
    topology: &Topology,
    k: usize,
    ma_dpt_bits: f64,
    per_source_bits: f64,
    rng_seed: u64,
) -> Result<ItinerarySet> {
    check_payload_threshold(ma_dpt_bits, per_source_bits)?;
    let sink = topology.positions[topology.sink_id];
    let partitions = kmeans_partition(&deployment.sources, k, &topology.positions, rng_seed)?;
    let mut itineraries = Vec::new();
    for partition in &partitions {
        let order = lcf_order(&partition.members, sink, &topology.positions);
        for segment in payload_segments(&order, ma_dpt_bits, per_source_bits) {
            itineraries.push(Itinerary::plain(segment, topology.sink_id));
        }
    }
    Ok(ItinerarySet::new(itineraries))
}
