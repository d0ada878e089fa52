//! Seeded Lloyd iteration over source positions.
//!
//! Only the selected sources are clustered; relay nodes play no role in
//! grouping. Determinism matters more than clustering quality here, so every
//! tie has a fixed winner: assignment ties go to the lowest partition index,
//! and the empty-cluster repair picks the lowest-id candidate.

use crate::deploy::NodeId;
use crate::error::Error;
use crate::geom::Point;
use crate::rng;
use crate::Result;

/// One k-means cluster of sources.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// Member sources, sorted ascending; never empty.
    pub members: Vec<NodeId>,
    /// Mean position of the members.
    pub centroid: Point,
}

const MAX_ITERATIONS: usize = 100;

/// Partitions `sources` into `k` clusters by Lloyd iteration.
///
/// Initial centroids are `k` distinct sources drawn with the seeded RNG.
/// Iteration stops when the assignment is stable or after 100 rounds. A
/// cluster that comes out empty is repaired by moving in the source farthest
/// from its own centroid (taken from a cluster that can spare one).
pub fn kmeans_partition(
    sources: &[NodeId],
    k: usize,
    positions: &[Point],
    rng_seed: u64,
) -> Result<Vec<Partition>> {
    let mut points: Vec<NodeId> = sources.to_vec();
    points.sort_unstable();
    points.dedup();
    if k == 0 || k > points.len() {
        return Err(Error::PartitionCountOutOfRange {
            k,
            sources: points.len(),
        });
    }

    let mut rng = rng::seeded(rng_seed);
    let seeds = rng::sample_distinct(&mut rng, &points, k);
    let mut centroids: Vec<Point> = seeds.iter().map(|&s| positions[s]).collect();

    let mut assignment: Option<Vec<usize>> = None;
    for _ in 0..MAX_ITERATIONS {
        let mut next: Vec<usize> = points
            .iter()
            .map(|&s| nearest_centroid(positions[s], &centroids))
            .collect();
        repair_empty_clusters(&points, positions, &centroids, &mut next);

        let stable = assignment.as_ref() == Some(&next);
        centroids = recompute_centroids(&points, positions, &next, k);
        assignment = Some(next);
        if stable {
            break;
        }
    }

    let assignment = assignment.expect("at least one iteration ran");
    let mut partitions: Vec<Partition> = centroids
        .into_iter()
        .map(|centroid| Partition {
            members: Vec::new(),
            centroid,
        })
        .collect();
    for (i, &cluster) in assignment.iter().enumerate() {
        partitions[cluster].members.push(points[i]);
    }
    Ok(partitions)
}

fn nearest_centroid(p: Point, centroids: &[Point]) -> usize {
    let mut best = 0;
    let mut best_dist = p.distance(&centroids[0]);
    for (i, c) in centroids.iter().enumerate().skip(1) {
        let d = p.distance(c);
        if d < best_dist {
            best = i;
            best_dist = d;
        }
    }
    best
}

fn repair_empty_clusters(
    points: &[NodeId],
    positions: &[Point],
    centroids: &[Point],
    assignment: &mut [usize],
) {
    let k = centroids.len();
    let mut counts = vec![0usize; k];
    for &c in assignment.iter() {
        counts[c] += 1;
    }
    for empty in 0..k {
        if counts[empty] > 0 {
            continue;
        }
        // Donor: the point farthest from its own centroid, from any cluster
        // that keeps at least one member.
        let mut donor: Option<(usize, f64)> = None;
        for (i, &s) in points.iter().enumerate() {
            if counts[assignment[i]] < 2 {
                continue;
            }
            let d = positions[s].distance(&centroids[assignment[i]]);
            if donor.is_none_or(|(_, dd)| d > dd) {
                donor = Some((i, d));
            }
        }
        let (i, _) = donor.expect("k <= |sources| leaves a cluster with two members");
        counts[assignment[i]] -= 1;
        assignment[i] = empty;
        counts[empty] += 1;
    }
}

fn recompute_centroids(
    points: &[NodeId],
    positions: &[Point],
    assignment: &[usize],
    k: usize,
) -> Vec<Point> {
    let mut sums = vec![(0.0f64, 0.0f64, 0usize); k];
    for (i, &cluster) in assignment.iter().enumerate() {
        let p = positions[points[i]];
        sums[cluster].0 += p.x;
        sums[cluster].1 += p.y;
        sums[cluster].2 += 1;
    }
    sums.into_iter()
        .map(|(x, y, n)| {
            debug_assert!(n > 0, "clusters are repaired before recomputing");
            Point::new(x / n as f64, y / n as f64)
        })
        .collect()
}
