//! Node deployment and source selection.
//!
//! A deployment scatters `node_count` static nodes uniformly over the field
//! and places the sink at a fixed position. Node ids are dense: `0..node_count`
//! for sensors, with the sink taking the final id `node_count`, so positions
//! can be stored as a flat vector indexed by id.

use crate::error::Error;
use crate::geom::Point;
use crate::rng;
use crate::Result;

/// Dense node identifier; the sink is always the largest id in a deployment.
pub type NodeId = usize;

/// Field geometry and deployment parameters for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    pub field_width_m: f64,
    pub field_height_m: f64,
    pub node_count: usize,
    pub transmission_range_m: f64,
    pub sink_position: Point,
    pub rng_seed: u64,
}

impl Default for NetworkConfig {
    /// The standard large-scale setup: a 1000 m x 500 m field with 800
    /// uniformly deployed nodes, 60 m transmission range, and the sink at
    /// the field center.
    fn default() -> Self {
        NetworkConfig {
            field_width_m: 1000.0,
            field_height_m: 500.0,
            node_count: 800,
            transmission_range_m: 60.0,
            sink_position: Point::new(500.0, 250.0),
            rng_seed: 0,
        }
    }
}

impl NetworkConfig {
    /// Checks the structural invariants; the deployment functions assume them.
    /// Finiteness checks double as NaN rejection for values parsed from text.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.field_width_m) {
            return Err("field_width must be > 0".into());
        }
        if !positive(self.field_height_m) {
            return Err("field_height must be > 0".into());
        }
        if self.node_count < 1 {
            return Err("node_count must be >= 1".into());
        }
        if !positive(self.transmission_range_m) {
            return Err("transmission_range must be > 0".into());
        }
        let s = self.sink_position;
        if !(0.0..=self.field_width_m).contains(&s.x) || !(0.0..=self.field_height_m).contains(&s.y)
        {
            return Err("sink_position must lie inside the field".into());
        }
        Ok(())
    }
}

/// Node positions plus the selected source set for one trial.
///
/// `positions[id]` is the location of node `id`; the sink is `positions.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub positions: Vec<Point>,
    pub sink_id: NodeId,
    /// Selected source nodes, sorted ascending; never contains the sink.
    pub sources: Vec<NodeId>,
}

impl Deployment {
    pub fn sink_position(&self) -> Point {
        self.positions[self.sink_id]
    }

    /// Number of deployed sensor nodes (the sink not included).
    pub fn sensor_count(&self) -> usize {
        self.positions.len() - 1
    }

    /// Iterates `(id, position)` pairs over every node including the sink.
    pub fn nodes(&self) -> impl Iterator<Item = (NodeId, Point)> + '_ {
        self.positions.iter().copied().enumerate()
    }
}

/// Scatters `config.node_count` nodes independently and uniformly over the
/// field, seeded by `config.rng_seed`, and pins the sink at
/// `config.sink_position`. The source set starts empty; pick it with
/// [`select_sources`]. Same config, same deployment, bit for bit.
pub fn deploy_nodes(config: &NetworkConfig) -> Deployment {
    let mut rng = rng::seeded(config.rng_seed);
    let mut positions = Vec::with_capacity(config.node_count + 1);
    for _ in 0..config.node_count {
        let x = rng::unit_f64(&mut rng) * config.field_width_m;
        let y = rng::unit_f64(&mut rng) * config.field_height_m;
        positions.push(Point::new(x, y));
    }
    positions.push(config.sink_position);
    Deployment {
        sink_id: config.node_count,
        positions,
        sources: Vec::new(),
    }
}

/// Samples `count` distinct non-sink nodes without replacement, seeded by
/// `rng_seed`, and returns a deployment carrying them as the source set.
/// Planners under comparison should all receive the same output so they
/// compete on identical trials.
pub fn select_sources(deployment: &Deployment, count: usize, rng_seed: u64) -> Result<Deployment> {
    let available = deployment.sensor_count();
    if count == 0 || count > available {
        return Err(Error::InsufficientNodes {
            requested: count,
            available,
        });
    }
    let pool: Vec<NodeId> = (0..available).collect();
    let mut rng = rng::seeded(rng_seed);
    let mut sources = rng::sample_distinct(&mut rng, &pool, count);
    sources.sort_unstable();
    Ok(Deployment {
        positions: deployment.positions.clone(),
        sink_id: deployment.sink_id,
        sources,
    })
}
