//! Shared fixtures for the criterion benchmarks.

use masim_core::{
    build_topology, deploy_nodes, select_sources, Deployment, NetworkConfig, Topology,
};

/// Standard-density world (1000 x 500 m, 800 nodes, 60 m range) with the
/// requested number of sources. Redeploys with bumped seeds on the rare
/// partitioned draw, like the experiment harness does.
pub fn standard_world(source_count: usize, seed: u64) -> (Deployment, Topology) {
    for attempt in 0..64u64 {
        let config = NetworkConfig {
            rng_seed: seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            ..NetworkConfig::default()
        };
        let deployment = deploy_nodes(&config);
        if let Ok(topology) = build_topology(&deployment, config.transmission_range_m) {
            let deployment = select_sources(&deployment, source_count, seed).unwrap();
            return (deployment, topology);
        }
    }
    panic!("no connected standard deployment near seed {seed}");
}
