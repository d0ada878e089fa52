//! Crate-wide error type.

use crate::deploy::NodeId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// More sources requested than non-sink nodes exist.
    #[error("insufficient nodes: requested {requested} sources but only {available} non-sink nodes are deployed")]
    InsufficientNodes { requested: usize, available: usize },

    /// The unit-disk graph does not connect every node to the sink.
    #[error("network partitioned: node {node} has no path to the sink")]
    NetworkPartitioned { node: NodeId },

    /// No route between the two endpoints.
    #[error("no path from node {from} to node {to}")]
    NoPath { from: NodeId, to: NodeId },

    /// An operation that needs at least one source got none.
    #[error("empty source set")]
    EmptySources,

    /// Requested partition count is outside 1..=|sources|.
    #[error("partition count {k} out of range for {sources} sources")]
    PartitionCountOutOfRange { k: usize, sources: usize },

    /// The split point is not part of the itinerary.
    #[error("split point {fsn} is not in the itinerary")]
    FsnNotInItinerary { fsn: NodeId },

    /// The farthest source is already visited last; reversal applies, not a split.
    #[error("no split needed: {fsn} is the last source in the itinerary")]
    NoSplitNeeded { fsn: NodeId },

    /// Agent payload threshold below a single source's contribution.
    #[error("payload threshold {ma_dpt_bits} bits is below one source contribution of {per_source_bits} bits")]
    PayloadThresholdTooSmall {
        ma_dpt_bits: f64,
        per_source_bits: f64,
    },

    /// A cloned agent was simulated without its main agent in the same set.
    #[error("cloned agent at clone point {clone_point} has no matching main agent")]
    MissingMainAgent { clone_point: NodeId },

    /// An itinerary violates its structural invariants.
    #[error("invalid itinerary: {reason}")]
    InvalidItinerary { reason: String },

    /// A metric was requested on a mission with no agents.
    #[error("empty mission: no agent traces")]
    EmptyMission,

    /// Throughput is undefined for a zero-duration mission.
    #[error("zero-duration mission: throughput undefined")]
    ZeroDuration,
}
