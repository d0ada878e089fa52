//! Shared generators and independent oracles for the property suites.
//! Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use masim_core::{
    build_topology, deploy_nodes, select_sources, Deployment, NetworkConfig, NodeId, Point,
    Topology,
};

/// Deploys nodes until the unit-disk graph connects, bumping the seed between
/// attempts so the function stays a pure function of its arguments.
pub fn connected_world(
    node_count: usize,
    field: (f64, f64),
    range: f64,
    source_count: usize,
    seed: u64,
) -> (Deployment, Topology) {
    for attempt in 0..200u64 {
        let config = NetworkConfig {
            field_width_m: field.0,
            field_height_m: field.1,
            node_count,
            transmission_range_m: range,
            sink_position: Point::new(field.0 / 2.0, field.1 / 2.0),
            rng_seed: seed.wrapping_add(attempt.wrapping_mul(1_000_003)),
        };
        let deployment = deploy_nodes(&config);
        if let Ok(topology) = build_topology(&deployment, range) {
            let with_sources = select_sources(&deployment, source_count, seed ^ 0x5EED)
                .expect("source_count fits the deployment");
            return (with_sources, topology);
        }
    }
    panic!("no connected deployment found for n={node_count}, range={range}");
}

/// All-pairs hop counts straight from the positions and the unit-disk rule,
/// by Floyd-Warshall. Deliberately ignores `Topology` so it can act as an
/// independent oracle for the BFS routing.
#[allow(clippy::needless_range_loop)]
pub fn floyd_warshall_hops(positions: &[Point], range: f64) -> Vec<Vec<Option<u32>>> {
    let n = positions.len();
    let mut dist: Vec<Vec<Option<u32>>> = vec![vec![None; n]; n];
    for i in 0..n {
        dist[i][i] = Some(0);
        for j in 0..n {
            if i != j && positions[i].distance(&positions[j]) <= range {
                dist[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(dik) = dist[i][k] else { continue };
            for j in 0..n {
                let Some(dkj) = dist[k][j] else { continue };
                let through = dik + dkj;
                if dist[i][j].is_none_or(|d| through < d) {
                    dist[i][j] = Some(through);
                }
            }
        }
    }
    dist
}

/// Builds a topology directly from positions without the connectivity gate,
/// for oracle comparisons on graphs that may be partitioned.
#[allow(clippy::needless_range_loop)]
pub fn raw_topology(positions: Vec<Point>, range: f64) -> Topology {
    let n = positions.len();
    let deployment = Deployment {
        sink_id: n - 1,
        positions,
        sources: Vec::new(),
    };
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            if u != v && deployment.positions[u].distance(&deployment.positions[v]) <= range {
                adjacency[u].push(v);
            }
        }
    }
    Topology {
        adjacency,
        positions: deployment.positions,
        sink_id: deployment.sink_id,
        transmission_range_m: range,
    }
}

/// Small deterministic position scatter for oracle tests.
pub fn scatter(n: usize, field: (f64, f64), seed: u64) -> Vec<Point> {
    let mut state = seed
        .wrapping_mul(2862933555777941757)
        .wrapping_add(3037000493);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..n)
        .map(|_| Point::new(next() * field.0, next() * field.1))
        .collect()
}
