//! Simulation core for mobile-agent data gathering in wireless sensor networks.
//!
//! A data-gathering task dispatches one or more mobile agents (MAs) from the
//! sink; each agent hops through the multi-hop network, visits its assigned
//! source nodes, aggregates their readings into a growing payload, and carries
//! the result back to the sink. This crate provides the pieces needed to study
//! how the itinerary planning strategy affects task duration, event-to-sink
//! throughput, and energy:
//!
//! - [`deploy`]: seeded uniform node deployment and source selection,
//! - [`topology`]: unit-disk connectivity and minimum-hop routing,
//! - [`planner`]: the CMIP clone-based planner and the CL-MIP / GIGM-MIP
//!   baselines, all built on local-closest-first ordering,
//! - [`sim`]: per-leg delay, payload growth, and radio energy accounting,
//! - [`metrics`]: task duration, throughput, and total energy reductions.
//!
//! Everything is a pure function of its inputs (including RNG seeds), so runs
//! are reproducible bit-for-bit and safe to evaluate concurrently.

pub mod deploy;
pub mod error;
pub mod geom;
pub mod metrics;
pub mod planner;
pub mod sim;
pub mod topology;

mod rng;

pub use deploy::{deploy_nodes, select_sources, Deployment, NetworkConfig, NodeId};
pub use error::Error;
pub use geom::{farthest_source_node, Point};
pub use metrics::{event_to_sink_throughput, task_duration, total_energy, MetricsRow};
pub use planner::{
    kmeans_partition, lcf_order, plan_clmip, plan_cmip, plan_gigm, reverse_itinerary, split_at_fsn,
    unit_growth_cost, AgentKind, Itinerary, ItinerarySet, Partition,
};
pub use sim::{
    leg_delay, leg_energy, payload_after, payload_per_source, simulate_agent, simulate_mission,
    source_processing_delay, AgentParams, AgentTrace, EnergyParams, Leg, MissionResult,
};
pub use topology::{build_topology, hop_count, hop_path, Topology};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
