//! Routing invariants checked against independent oracles.
#![allow(clippy::needless_range_loop)]

mod common;

use common::{connected_world, floyd_warshall_hops, raw_topology, scatter};
use masim_core::topology::{hop_count, hop_path};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// BFS hop counts agree with Floyd-Warshall on every pair, reachable or
    /// not, for graphs of up to 60 nodes.
    #[test]
    fn hop_counts_match_floyd_warshall(n in 2usize..=60, seed in 0u64..1_000_000, range in 40.0f64..120.0) {
        let positions = scatter(n, (300.0, 300.0), seed);
        let topology = raw_topology(positions.clone(), range);
        let oracle = floyd_warshall_hops(&positions, range);
        for from in 0..n {
            for to in 0..n {
                match oracle[from][to] {
                    Some(d) => prop_assert_eq!(hop_count(&topology, from, to).unwrap(), d as usize),
                    None => prop_assert!(hop_count(&topology, from, to).is_err()),
                }
            }
        }
    }

    /// Returned paths are genuine walks: endpoints right, consecutive nodes
    /// adjacent, length equal to the hop count, and no repeated nodes.
    #[test]
    fn hop_paths_are_valid_walks(n in 2usize..=40, seed in 0u64..1_000_000) {
        let positions = scatter(n, (250.0, 250.0), seed);
        let topology = raw_topology(positions, 70.0);
        for from in 0..n {
            for to in 0..n {
                let Ok(path) = hop_path(&topology, from, to) else { continue };
                prop_assert_eq!(path[0], from);
                prop_assert_eq!(*path.last().unwrap(), to);
                prop_assert_eq!(path.len() - 1, hop_count(&topology, from, to).unwrap());
                for w in path.windows(2) {
                    prop_assert!(topology.adjacency[w[0]].contains(&w[1]));
                }
                let mut dedup = path.clone();
                dedup.sort_unstable();
                dedup.dedup();
                prop_assert_eq!(dedup.len(), path.len());
            }
        }
    }

    /// Unit-disk adjacency is symmetric and matches the distance rule.
    #[test]
    fn adjacency_is_symmetric_and_distance_faithful(seed in 0u64..1_000_000, sources in 3usize..12) {
        let (deployment, topology) = connected_world(60, (400.0, 250.0), 60.0, sources, seed);
        let n = deployment.positions.len();
        for u in 0..n {
            for v in 0..n {
                let adjacent = topology.adjacency[u].contains(&v);
                let in_range = u != v
                    && deployment.positions[u].distance(&deployment.positions[v]) <= 60.0;
                prop_assert_eq!(adjacent, in_range);
                prop_assert_eq!(adjacent, topology.adjacency[v].contains(&u));
            }
        }
    }

    /// Hop counts obey the triangle inequality.
    #[test]
    fn hop_counts_satisfy_triangle(seed in 0u64..1_000_000, triple in (0usize..50, 0usize..50, 0usize..50)) {
        let (_, topology) = connected_world(50, (350.0, 250.0), 60.0, 3, seed);
        let (a, b, c) = triple;
        let ab = hop_count(&topology, a, b).unwrap();
        let bc = hop_count(&topology, b, c).unwrap();
        let ac = hop_count(&topology, a, c).unwrap();
        prop_assert!(ac <= ab + bc);
    }

    /// Path construction is deterministic, including tie-breaks.
    #[test]
    fn hop_paths_are_deterministic(seed in 0u64..1_000_000) {
        let (_, topology) = connected_world(55, (350.0, 250.0), 60.0, 3, seed);
        let n = topology.positions.len();
        for from in (0..n).step_by(7) {
            for to in (0..n).step_by(5) {
                prop_assert_eq!(
                    hop_path(&topology, from, to).unwrap(),
                    hop_path(&topology, from, to).unwrap()
                );
            }
        }
    }
}
