use super::assignment::min_cost_assignment;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Optimal matching between two partitions of the same vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionDistance {
    /// `min_σ Σ_i |A_i △ C_σ(i)|`.
    pub distance: usize,
    /// `sigma[i]` is the cluster of the second partition matched to cluster
    /// `i` of the first. Both sides are padded with empty clusters to the
    /// larger cluster count, so indices past a partition's `k` denote padding.
    pub sigma: Vec<usize>,
}

/// `|A_i ∩ C_j|` for every pair of clusters, padded to a square matrix.
fn intersections(a: &Partition, c: &Partition, size: usize) -> Vec<Vec<usize>> {
    let mut m = vec![vec![0usize; size]; size];
    for (&la, &lc) in a.labels().iter().zip(c.labels()) {
        m[la][lc] += 1;
    }
    m
}

/// Permutation-minimized symmetric-difference distance.
///
/// Uses `|A △ C| = |A| + |C| − 2|A ∩ C|` to turn the minimum over all
/// permutations into an assignment problem solved exactly.
pub fn partition_distance(a: &Partition, c: &Partition) -> Result<PartitionDistance> {
    if a.n() != c.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: c.n(),
        });
    }
    let size = a.k().max(c.k());
    let inter = intersections(a, c, size);
    let mut sa = a.sizes();
    sa.resize(size, 0);
    let mut sc = c.sizes();
    sc.resize(size, 0);
    let cost: Vec<Vec<i64>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| (sa[i] + sc[j]) as i64 - 2 * inter[i][j] as i64)
                .collect()
        })
        .collect();
    let (total, sigma) = min_cost_assignment(&cost);
    Ok(PartitionDistance {
        distance: total as usize,
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_and_relabeled() {
        let a = Partition::from_labels(vec![0, 0, 1, 1, 2]);
        assert_eq!(partition_distance(&a, &a).unwrap().distance, 0);
        let b = Partition::from_labels(vec![2, 2, 0, 0, 1]);
        let d = partition_distance(&a, &b).unwrap();
        assert_eq!(d.distance, 0);
        assert_eq!(d.sigma, vec![2, 0, 1]);
    }

    #[test]
    fn single_moved_element() {
        // {1,2,3},{4,5,6} vs {1,2},{3,4,5,6}, shifted to 0-based ids.
        let a = Partition::from_clusters(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let c = Partition::from_clusters(6, &[vec![0, 1], vec![2, 3, 4, 5]]).unwrap();
        assert_eq!(partition_distance(&a, &c).unwrap().distance, 2);
    }

    #[test]
    fn pads_unequal_cluster_counts() {
        let a = Partition::from_labels(vec![0, 0, 0, 0]);
        let c = Partition::from_labels(vec![0, 0, 1, 1]);
        // {all} vs {0,1}: 2, plus ∅ vs {2,3}: 2.
        assert_eq!(partition_distance(&a, &c).unwrap().distance, 4);
        assert_eq!(partition_distance(&c, &a).unwrap().distance, 4);
    }

    #[test]
    fn size_mismatch() {
        let a = Partition::from_labels(vec![0, 1]);
        let c = Partition::from_labels(vec![0, 1, 1]);
        assert!(partition_distance(&a, &c).is_err());
    }
}
