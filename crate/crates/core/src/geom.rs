//! Planar geometry shared by deployment, planning, and the radio model.

use crate::deploy::NodeId;
use crate::error::Error;
use crate::Result;

/// A position in the field, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean distance to `other`, in meters.
    pub fn distance(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Picks the source at maximum Euclidean distance from the sink, the cloning
/// point used by the CMIP planner. Ties break to the lowest node id so the
/// choice is reproducible.
pub fn farthest_source_node(
    sources: &[NodeId],
    positions: &[Point],
    sink: Point,
) -> Result<NodeId> {
    let mut best: Option<(NodeId, f64)> = None;
    for &s in sources {
        let d = positions[s].distance(&sink);
        let better = match best {
            None => true,
            Some((id, bd)) => d > bd || (d == bd && s < id),
        };
        if better {
            best = Some((s, d));
        }
    }
    best.map(|(id, _)| id).ok_or(Error::EmptySources)
}
