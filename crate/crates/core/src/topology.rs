//! Unit-disk connectivity and minimum-hop routing.

use crate::deploy::{Deployment, NodeId};
use crate::error::Error;
use crate::geom::Point;
use crate::Result;

/// Connectivity graph of a deployment under a fixed transmission range.
///
/// Nodes `u` and `v` are adjacent iff their Euclidean distance is at most the
/// range (boundary inclusive). Construction fails unless every node can reach
/// the sink, so downstream routing never has to handle partitions.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    /// `adjacency[id]` lists neighbors in ascending id order.
    pub adjacency: Vec<Vec<NodeId>>,
    pub positions: Vec<Point>,
    pub sink_id: NodeId,
    pub transmission_range_m: f64,
}

/// Builds the unit-disk graph of `deployment` and verifies that the sink can
/// reach every node.
pub fn build_topology(deployment: &Deployment, transmission_range_m: f64) -> Result<Topology> {
    let n = deployment.positions.len();
    let mut adjacency = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            if deployment.positions[u].distance(&deployment.positions[v]) <= transmission_range_m {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    // Neighbor lists come out ascending by construction for `u < v` pushes on
    // the `u` side but not the `v` side, so normalize.
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let topology = Topology {
        adjacency,
        positions: deployment.positions.clone(),
        sink_id: deployment.sink_id,
        transmission_range_m,
    };
    if let Some(node) = first_unreachable(&topology) {
        return Err(Error::NetworkPartitioned { node });
    }
    Ok(topology)
}

/// Lowest-id node with no path to the sink, if any.
fn first_unreachable(topology: &Topology) -> Option<NodeId> {
    let dist = bfs_distances(topology, topology.sink_id);
    dist.iter().position(|d| d.is_none())
}

fn bfs_distances(topology: &Topology, from: NodeId) -> Vec<Option<u32>> {
    let mut dist: Vec<Option<u32>> = vec![None; topology.adjacency.len()];
    dist[from] = Some(0);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes have distances");
        for &v in &topology.adjacency[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Minimum-hop route from `from` to `to`, both endpoints included.
///
/// Among equal-hop predecessors the lowest node id wins, which makes the
/// returned path unique. The hop count is `path.len() - 1`.
pub fn hop_path(topology: &Topology, from: NodeId, to: NodeId) -> Result<Vec<NodeId>> {
    if from == to {
        return Ok(vec![from]);
    }
    let dist = bfs_distances(topology, from);
    let mut d = dist[to].ok_or(Error::NoPath { from, to })?;
    let mut path = vec![to];
    let mut cur = to;
    while d > 0 {
        // Neighbor lists are ascending, so the first one a layer closer is
        // the lowest-id predecessor.
        let pred = topology.adjacency[cur]
            .iter()
            .copied()
            .find(|&u| dist[u] == Some(d - 1))
            .expect("BFS layer below a reached node is populated");
        path.push(pred);
        cur = pred;
        d -= 1;
    }
    path.reverse();
    Ok(path)
}

/// Hop count of the minimum-hop route, without materializing the path.
pub fn hop_count(topology: &Topology, from: NodeId, to: NodeId) -> Result<usize> {
    if from == to {
        return Ok(0);
    }
    bfs_distances(topology, from)[to]
        .map(|d| d as usize)
        .ok_or(Error::NoPath { from, to })
}
